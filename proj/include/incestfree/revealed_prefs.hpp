// Copyright 2026 The incestfree Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Revealed preferences: GARP, Afriat's inequalities and the piecewise-linear
// utility they construct, plus the one-step AR model for public beliefs.
//
// Observations are numbered t = 1..T in everything returned to callers
// (cycles, active planes); storage is 0-based.

#ifndef INCESTFREE_REVEALED_PREFS_HPP_
#define INCESTFREE_REVEALED_PREFS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "incestfree/matrix.hpp"

namespace incestfree {

inline constexpr double kGarpTolerance = 1e-10;
inline constexpr double kAfriatTolerance = 1e-8;
inline constexpr double kActivePlaneTolerance = 1e-9;

// Probes p_t (strictly positive) and responses a_t (nonnegative), T x m.
class ChoiceDataset {
 public:
  ChoiceDataset(Matrix<double> probes, Matrix<double> responses);

  std::size_t size() const noexcept { return probes_.rows(); }
  std::size_t dim() const noexcept { return probes_.cols(); }
  const Matrix<double>& probes() const noexcept { return probes_; }
  const Matrix<double>& responses() const noexcept { return responses_; }

  // p_s' a_t, 0-based.
  double Cost(std::size_t s, std::size_t t) const;
  // I_t = p_t' a_t, 0-based.
  double Budget(std::size_t t) const { return Cost(t, t); }

 private:
  Matrix<double> probes_;
  Matrix<double> responses_;
};

struct GarpResult {
  bool consistent = true;
  // On failure, t_1 -> t_2 -> ... -> t_k with t_i R0 t_{i+1} and a strict
  // reversal from t_k back to t_1 (p_{t_k}' a_{t_k} > p_{t_k}' a_{t_1}).
  std::vector<int> violating_cycle;
};

// Direct relation t R0 s iff p_t' a_t >= p_t' a_s (relative tolerance
// 1e-10), closed with Warshall; fails iff t R s with p_s' a_s > p_s' a_t by
// more than 1e-10.
GarpResult GarpCheck(const ChoiceDataset& data);

struct AfriatCertificate {
  std::vector<double> u;
  std::vector<double> lambda;  // every entry >= 1
};

// Solves u_s - u_t - lambda_t p_t'(a_s - a_t) <= 0 for all t != s with
// lambda_t >= 1 as a phase-one LP. Returns nullopt when infeasible; throws
// kSolver if the LP fails or its point does not verify.
std::optional<AfriatCertificate> AfriatSolve(const ChoiceDataset& data);

// Largest violation of the Afriat inequalities (0 when all hold).
double AfriatViolation(const ChoiceDataset& data,
                       const AfriatCertificate& certificate);

struct MrsInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool is_point() const { return lo == hi; }
};

// u(a) = min_t { u_t + lambda_t p_t'(a - a_t) }.
class PiecewiseUtility {
 public:
  PiecewiseUtility(ChoiceDataset data, AfriatCertificate certificate);

  double operator()(std::span<const double> a) const;
  // Minimizing planes (1-based), within 1e-9 of the minimum.
  std::vector<int> ActivePlanes(std::span<const double> a) const;
  // Ratio p_t(i) / p_t(j) over the active planes (i, j are 1-based goods).
  MrsInterval Mrs(std::span<const double> a, int i, int j) const;

  const ChoiceDataset& data() const noexcept { return data_; }
  const AfriatCertificate& certificate() const noexcept { return cert_; }

 private:
  std::vector<double> PlaneValues(std::span<const double> a) const;

  ChoiceDataset data_;
  AfriatCertificate cert_;
};

struct ArFitResult {
  double b = 0.0;
  std::vector<double> residuals;  // length T - 1
  // Mean of |prediction - actual| / |actual| over the one-step predictions,
  // as a fraction; steps with actual == 0 are skipped (NaN if all are).
  double mape = 0.0;
};

// Least squares for pi_{t+1} = pi_t + b a_t + e_t. Throws kDomain for
// T < 2 or unequal lengths, kDegenerateRegressor when the driver is zero.
ArFitResult ArFit(std::span<const double> belief, std::span<const double> driver);

}  // namespace incestfree

#endif  // INCESTFREE_REVEALED_PREFS_HPP_
