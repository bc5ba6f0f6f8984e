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

#ifndef INCESTFREE_BELIEF_HPP_
#define INCESTFREE_BELIEF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "incestfree/matrix.hpp"

namespace incestfree {

inline constexpr double kBeliefSumTolerance = 1e-9;
inline constexpr double kRowSumTolerance = 1e-12;

class LogBelief;

// Probability vector over states 1..X; probs()[i - 1] is state i.
class Belief {
 public:
  // Validates: nonempty, entries >= 0 and finite, sum within 1e-9 of 1.
  explicit Belief(std::vector<double> probs);

  // Scales a nonnegative vector with positive finite mass to sum 1.
  static Belief Normalized(std::vector<double> weights);
  static Belief Uniform(std::size_t states);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  // E{x} with states numbered 1..X.
  double Mean() const;
  // Most likely state (1-based, lowest index on ties).
  int Argmax() const;

  LogBelief Log() const;

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<double> probs_;
};

// Sum of absolute differences halved.
double TotalVariation(const Belief& a, const Belief& b);

// Unnormalized log-domain belief. Canonical form: max entry 0, entries
// finite or -inf, at least one finite.
class LogBelief {
 public:
  // Shifts into canonical form. Throws kZeroLikelihood if every entry is
  // -inf and kDomain on NaN or +inf.
  explicit LogBelief(std::vector<double> logs);

  static LogBelief Uniform(std::size_t states);

  std::size_t size() const noexcept { return logs_.size(); }
  double operator[](std::size_t i) const { return logs_[i]; }
  std::span<const double> logs() const noexcept { return logs_; }

  // Exponentiate and normalize (log-sum-exp).
  Belief ToBelief() const;

  friend bool operator==(const LogBelief&, const LogBelief&) = default;

 private:
  std::vector<double> logs_;
};

// Finite-state learning model: X states, Y observations, A actions.
// Observation matrix B is X x Y with B(i, y) = P(y | x = i), cost is X x A.
struct LearningModel {
  int states = 0;
  int observations = 0;
  int actions = 0;
  Matrix<double> observation;
  Matrix<double> cost;
  Belief prior = Belief::Uniform(1);

  // Throws kDomain when dimensions disagree, a row of B is not a
  // probability vector (within 1e-12) or a cost is not finite.
  void Validate() const;
};

// B(i, y) proportional to exp(-(y - i)^2 / 2), rows normalized; cost
// c(i, a) = |(A / X) i - a|; uniform prior.
LearningModel GaussianLearningModel(int states, int observations, int actions);

// Two-state model with a symmetric observation channel: B = [[q, 1-q],
// [1-q, q]], cost [[0, 2], [2, 0]].
LearningModel BinaryModel(double accuracy, Belief prior);

}  // namespace incestfree

#endif  // INCESTFREE_BELIEF_HPP_
