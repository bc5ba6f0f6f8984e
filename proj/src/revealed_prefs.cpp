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

#include "incestfree/revealed_prefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "incestfree/errors.hpp"
#include "incestfree/simplex.hpp"

namespace incestfree {

ChoiceDataset::ChoiceDataset(Matrix<double> probes, Matrix<double> responses)
    : probes_(std::move(probes)), responses_(std::move(responses)) {
  if (probes_.rows() == 0 || probes_.cols() == 0) {
    throw Error(ErrorKind::kDomain, "dataset needs T >= 1 and m >= 1");
  }
  if (responses_.rows() != probes_.rows() ||
      responses_.cols() != probes_.cols()) {
    throw Error(ErrorKind::kDomain, "probes and responses differ in shape");
  }
  for (std::size_t t = 0; t < probes_.rows(); ++t) {
    for (std::size_t i = 0; i < probes_.cols(); ++i) {
      const double p = probes_(t, i);
      const double a = responses_(t, i);
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::kDomain, "probe p_" + std::to_string(t + 1) +
                                            " is not strictly positive");
      }
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::kDomain, "response a_" + std::to_string(t + 1) +
                                            " is negative or not finite");
      }
    }
  }
}

double ChoiceDataset::Cost(std::size_t s, std::size_t t) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) sum += probes_(s, i) * responses_(t, i);
  return sum;
}

GarpResult GarpCheck(const ChoiceDataset& data) {
  const std::size_t T = data.size();
  Matrix<double> cost(T, T, 0.0);
  for (std::size_t s = 0; s < T; ++s) {
    for (std::size_t t = 0; t < T; ++t) cost(s, t) = data.Cost(s, t);
  }
  Matrix<int> direct(T, T, 0);
  for (std::size_t t = 0; t < T; ++t) {
    const double scale = std::max(1.0, std::abs(cost(t, t)));
    for (std::size_t s = 0; s < T; ++s) {
      direct(t, s) = cost(t, t) >= cost(t, s) - kGarpTolerance * scale ? 1 : 0;
    }
  }
  Matrix<int> reach = direct;
  for (std::size_t k = 0; k < T; ++k) {
    for (std::size_t i = 0; i < T; ++i) {
      if (!reach(i, k)) continue;
      for (std::size_t j = 0; j < T; ++j) {
        if (reach(k, j)) reach(i, j) = 1;
      }
    }
  }
  GarpResult result;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < T; ++s) {
      if (!reach(t, s) || cost(s, s) <= cost(s, t) + kGarpTolerance) continue;
      // Recover a direct-relation path t -> ... -> s by breadth-first search.
      std::vector<std::size_t> parent(T, T);
      std::vector<std::size_t> queue{t};
      parent[t] = t;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        for (std::size_t w = 0; w < T; ++w) {
          if (direct(v, w) && parent[w] == T) {
            parent[w] = v;
            queue.push_back(w);
          }
        }
      }
      std::vector<int> path;
      for (std::size_t v = s; v != t; v = parent[v]) {
        path.push_back(static_cast<int>(v) + 1);
      }
      path.push_back(static_cast<int>(t) + 1);
      std::reverse(path.begin(), path.end());
      result.consistent = false;
      result.violating_cycle = std::move(path);
      return result;
    }
  }
  return result;
}

double AfriatViolation(const ChoiceDataset& data,
                       const AfriatCertificate& certificate) {
  const std::size_t T = data.size();
  double worst = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    worst = std::max(worst, 1.0 - certificate.lambda[t]);
    for (std::size_t s = 0; s < T; ++s) {
      if (s == t) continue;
      const double c = data.Cost(t, s) - data.Cost(t, t);
      const double lhs =
          certificate.u[s] - certificate.u[t] - certificate.lambda[t] * c;
      worst = std::max(worst, lhs);
    }
  }
  return worst;
}

std::optional<AfriatCertificate> AfriatSolve(const ChoiceDataset& data) {
  const std::size_t T = data.size();
  if (T == 1) return AfriatCertificate{{0.0}, {1.0}};

  // Variables: u_1..u_T (u is shift invariant, so u >= 0 loses nothing) and
  // mu_t = lambda_t - 1 >= 0. Row (t, s): u_s - u_t - mu_t c_ts <= c_ts.
  Matrix<double> c(T, T, 0.0);
  double scale = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < T; ++s) {
      c(t, s) = data.Cost(t, s) - data.Cost(t, t);
      scale = std::max(scale, std::abs(c(t, s)));
    }
  }
  if (scale == 0.0) scale = 1.0;
  const std::size_t rows = T * (T - 1);
  Matrix<double> M(rows, 2 * T, 0.0);
  std::vector<double> rhs(rows, 0.0);
  std::size_t r = 0;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < T; ++s) {
      if (s == t) continue;
      const double cn = c(t, s) / scale;
      M(r, s) = 1.0;
      M(r, t) = -1.0;
      M(r, T + t) = -cn;
      rhs[r] = cn;
      ++r;
    }
  }
  const PhaseOneResult lp = MinimizeViolation(M, rhs);
  if (lp.violation > kAfriatTolerance) return std::nullopt;

  AfriatCertificate cert;
  cert.u.resize(T);
  cert.lambda.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    cert.u[t] = lp.x[t] * scale;
    cert.lambda[t] = 1.0 + lp.x[T + t];
  }
  const double violation = AfriatViolation(data, cert);
  if (violation > kAfriatTolerance * std::max(1.0, scale)) {
    throw Error(ErrorKind::kSolver,
                "Afriat certificate fails verification (violation " +
                    std::to_string(violation) + ")");
  }
  return cert;
}

PiecewiseUtility::PiecewiseUtility(ChoiceDataset data,
                                   AfriatCertificate certificate)
    : data_(std::move(data)), cert_(std::move(certificate)) {
  if (cert_.u.size() != data_.size() || cert_.lambda.size() != data_.size()) {
    throw Error(ErrorKind::kDomain, "certificate does not match the dataset");
  }
}

std::vector<double> PiecewiseUtility::PlaneValues(
    std::span<const double> a) const {
  if (a.size() != data_.dim()) {
    throw Error(ErrorKind::kDomain, "bundle has the wrong dimension");
  }
  std::vector<double> values(data_.size());
  for (std::size_t t = 0; t < data_.size(); ++t) {
    double inner = 0.0;
    for (std::size_t i = 0; i < data_.dim(); ++i) {
      inner += data_.probes()(t, i) * (a[i] - data_.responses()(t, i));
    }
    values[t] = cert_.u[t] + cert_.lambda[t] * inner;
  }
  return values;
}

double PiecewiseUtility::operator()(std::span<const double> a) const {
  const std::vector<double> v = PlaneValues(a);
  return *std::min_element(v.begin(), v.end());
}

std::vector<int> PiecewiseUtility::ActivePlanes(
    std::span<const double> a) const {
  const std::vector<double> v = PlaneValues(a);
  const double best = *std::min_element(v.begin(), v.end());
  const double slack = kActivePlaneTolerance * std::max(1.0, std::abs(best));
  std::vector<int> active;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t] <= best + slack) active.push_back(static_cast<int>(t) + 1);
  }
  return active;
}

MrsInterval PiecewiseUtility::Mrs(std::span<const double> a, int i,
                                  int j) const {
  const int m = static_cast<int>(data_.dim());
  if (i < 1 || i > m || j < 1 || j > m || i == j) {
    throw Error(ErrorKind::kDomain, "MRS needs two distinct goods in 1.." +
                                        std::to_string(m));
  }
  MrsInterval out{std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (int t : ActivePlanes(a)) {
    const double ratio =
        data_.probes()(t - 1, i - 1) / data_.probes()(t - 1, j - 1);
    out.lo = std::min(out.lo, ratio);
    out.hi = std::max(out.hi, ratio);
  }
  return out;
}

ArFitResult ArFit(std::span<const double> belief,
                  std::span<const double> driver) {
  if (belief.size() != driver.size()) {
    throw Error(ErrorKind::kDomain, "belief and driver series differ in length");
  }
  if (belief.size() < 2) {
    throw Error(ErrorKind::kDomain, "AR fit needs at least two points");
  }
  const std::size_t steps = belief.size() - 1;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    sxy += (belief[t + 1] - belief[t]) * driver[t];
    sxx += driver[t] * driver[t];
  }
  if (sxx == 0.0) {
    throw Error(ErrorKind::kDegenerateRegressor,
                "driver series is identically zero");
  }
  ArFitResult out;
  out.b = sxy / sxx;
  out.residuals.resize(steps);
  double error_sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const double predicted = belief[t] + out.b * driver[t];
    out.residuals[t] = belief[t + 1] - predicted;
    if (belief[t + 1] != 0.0) {
      error_sum += std::abs(predicted - belief[t + 1]) / std::abs(belief[t + 1]);
      ++counted;
    }
  }
  out.mape = counted > 0 ? error_sum / static_cast<double>(counted)
                         : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace incestfree
