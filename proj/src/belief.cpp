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

#include "incestfree/belief.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "incestfree/errors.hpp"

namespace incestfree {

Belief::Belief(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::kDomain, "belief is empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::kDomain, "belief entries must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kBeliefSumTolerance) {
    throw Error(ErrorKind::kDomain,
                "belief must sum to 1 (sum = " + std::to_string(sum) + ")");
  }
}

Belief Belief::Normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::kDomain, "weights must be finite and >= 0");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::kZeroLikelihood, "cannot normalize zero mass");
  }
  for (double& w : weights) w /= sum;
  return Belief(std::move(weights));
}

Belief Belief::Uniform(std::size_t states) {
  if (states == 0) throw Error(ErrorKind::kDomain, "belief is empty");
  return Belief(std::vector<double>(states, 1.0 / static_cast<double>(states)));
}

double Belief::Mean() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    mean += static_cast<double>(i + 1) * probs_[i];
  }
  return mean;
}

int Belief::Argmax() const {
  return static_cast<int>(std::max_element(probs_.begin(), probs_.end()) -
                          probs_.begin()) +
         1;
}

LogBelief Belief::Log() const {
  std::vector<double> logs(probs_.size());
  std::transform(probs_.begin(), probs_.end(), logs.begin(),
                 [](double p) { return std::log(p); });
  return LogBelief(std::move(logs));
}

double TotalVariation(const Belief& a, const Belief& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDomain, "belief sizes differ");
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return 0.5 * tv;
}

LogBelief::LogBelief(std::vector<double> logs) : logs_(std::move(logs)) {
  if (logs_.empty()) throw Error(ErrorKind::kDomain, "log belief is empty");
  double top = -std::numeric_limits<double>::infinity();
  for (double l : logs_) {
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorKind::kDomain, "log belief entries must be < +inf");
    }
    top = std::max(top, l);
  }
  if (std::isinf(top)) {
    throw Error(ErrorKind::kZeroLikelihood, "log belief has no finite entry");
  }
  for (double& l : logs_) l -= top;
}

LogBelief LogBelief::Uniform(std::size_t states) {
  return LogBelief(std::vector<double>(states, 0.0));
}

Belief LogBelief::ToBelief() const {
  // Canonical form has max 0, so exp never overflows and the sum is >= 1.
  std::vector<double> probs(logs_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logs_.size(); ++i) {
    probs[i] = std::exp(logs_[i]);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return Belief(std::move(probs));
}

void LearningModel::Validate() const {
  if (states < 1 || observations < 1 || actions < 1) {
    throw Error(ErrorKind::kDomain, "model cardinalities must be positive");
  }
  const auto X = static_cast<std::size_t>(states);
  if (observation.rows() != X ||
      observation.cols() != static_cast<std::size_t>(observations)) {
    throw Error(ErrorKind::kDomain, "observation matrix B must be X x Y");
  }
  if (cost.rows() != X || cost.cols() != static_cast<std::size_t>(actions)) {
    throw Error(ErrorKind::kDomain, "cost matrix must be X x A");
  }
  if (prior.size() != X) {
    throw Error(ErrorKind::kDomain, "prior must have X entries");
  }
  for (std::size_t i = 0; i < X; ++i) {
    double sum = 0.0;
    for (double b : observation.row(i)) {
      if (!std::isfinite(b) || b < 0.0) {
        throw Error(ErrorKind::kDomain, "B entries must be finite and >= 0");
      }
      sum += b;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw Error(ErrorKind::kDomain,
                  "row " + std::to_string(i + 1) + " of B does not sum to 1");
    }
    for (double c : cost.row(i)) {
      if (!std::isfinite(c)) {
        throw Error(ErrorKind::kDomain, "cost entries must be finite");
      }
    }
  }
}

LearningModel GaussianLearningModel(int states, int observations,
                                    int actions) {
  LearningModel model;
  model.states = states;
  model.observations = observations;
  model.actions = actions;
  model.observation = Matrix<double>(states, observations);
  model.cost = Matrix<double>(states, actions);
  for (int i = 1; i <= states; ++i) {
    double sum = 0.0;
    for (int y = 1; y <= observations; ++y) {
      const double d = static_cast<double>(y - i);
      model.observation(i - 1, y - 1) = std::exp(-0.5 * d * d);
      sum += model.observation(i - 1, y - 1);
    }
    for (int y = 1; y <= observations; ++y) {
      model.observation(i - 1, y - 1) /= sum;
    }
    // |(A/X) i - a| = |A i - X a| / X, exact in the integers.
    for (int a = 1; a <= actions; ++a) {
      model.cost(i - 1, a - 1) =
          static_cast<double>(std::abs(actions * i - states * a)) / states;
    }
  }
  model.prior = Belief::Uniform(static_cast<std::size_t>(states));
  model.Validate();
  return model;
}

LearningModel BinaryModel(double accuracy, Belief prior) {
  LearningModel model;
  model.states = 2;
  model.observations = 2;
  model.actions = 2;
  model.observation = {{accuracy, 1.0 - accuracy}, {1.0 - accuracy, accuracy}};
  model.cost = {{0.0, 2.0}, {2.0, 0.0}};
  model.prior = std::move(prior);
  model.Validate();
  return model;
}

}  // namespace incestfree
