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

#include "incestfree/social_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "incestfree/errors.hpp"

namespace incestfree {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;
constexpr double kFrozenTolerance = 1e-12;

void CheckObservation(int y, const Matrix<double>& observation) {
  if (y < 1 || static_cast<std::size_t>(y) > observation.cols()) {
    throw Error(ErrorKind::kDomain,
                "observation " + std::to_string(y) + " outside 1.." +
                    std::to_string(observation.cols()));
  }
}

void CheckAction(int a, const LearningModel& model) {
  if (a < 1 || a > model.actions) {
    throw Error(ErrorKind::kDomain, "action " + std::to_string(a) +
                                        " outside 1.." +
                                        std::to_string(model.actions));
  }
}

// Adds log-likelihood terms to a log belief, keeping -inf sticky.
LogBelief Reweight(const LogBelief& belief, std::span<const double> likelihood,
                   const char* what) {
  std::vector<double> out(belief.size());
  bool any = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (belief[i] == kNegInf || likelihood[i] <= 0.0) {
      out[i] = kNegInf;
    } else {
      out[i] = belief[i] + std::log(likelihood[i]);
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::kZeroLikelihood, what);
  return LogBelief(std::move(out));
}

}  // namespace

LogBelief BayesPrivate(const LogBelief& prior, int y,
                       const Matrix<double>& observation) {
  CheckObservation(y, observation);
  if (prior.size() != observation.rows()) {
    throw Error(ErrorKind::kDomain, "belief size does not match B");
  }
  const std::vector<double> column = observation.column(y - 1);
  return Reweight(prior, column,
                  "observation has zero likelihood under the prior");
}

Belief BayesPrivate(const Belief& prior, int y,
                    const Matrix<double>& observation) {
  return BayesPrivate(prior.Log(), y, observation).ToBelief();
}

int MyopicAction(const Belief& belief, const Matrix<double>& cost) {
  if (belief.size() != cost.rows() || cost.cols() == 0) {
    throw Error(ErrorKind::kDomain, "cost matrix does not match belief");
  }
  std::vector<double> expected(cost.cols(), 0.0);
  for (std::size_t a = 0; a < cost.cols(); ++a) {
    for (std::size_t i = 0; i < belief.size(); ++i) {
      expected[a] += cost(i, a) * belief[i];
    }
  }
  const double best = *std::min_element(expected.begin(), expected.end());
  const double slack = kTieTolerance * (1.0 + std::abs(best));
  for (std::size_t a = 0; a < expected.size(); ++a) {
    if (expected[a] <= best + slack) return static_cast<int>(a) + 1;
  }
  return 1;  // unreachable
}

Matrix<double> ActionLikelihood(const Belief& belief,
                                const LearningModel& model) {
  const auto X = static_cast<std::size_t>(model.states);
  if (belief.size() != X) {
    throw Error(ErrorKind::kDomain, "belief size does not match model");
  }
  const int fallback = MyopicAction(belief, model.cost);
  const LogBelief log_belief = belief.Log();
  Matrix<double> likelihood(X, static_cast<std::size_t>(model.actions), 0.0);
  for (int y = 1; y <= model.observations; ++y) {
    int action = fallback;
    try {
      action = MyopicAction(
          BayesPrivate(log_belief, y, model.observation).ToBelief(),
          model.cost);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kZeroLikelihood) throw;
    }
    for (std::size_t i = 0; i < X; ++i) {
      likelihood(i, action - 1) += model.observation(i, y - 1);
    }
  }
  return likelihood;
}

LogBelief SocialLearningUpdate(const LogBelief& belief, int action,
                               const LearningModel& model) {
  CheckAction(action, model);
  const Matrix<double> likelihood = ActionLikelihood(belief.ToBelief(), model);
  const std::vector<double> column = likelihood.column(action - 1);
  return Reweight(belief, column, "action has zero probability under belief");
}

Belief SocialLearningUpdate(const Belief& belief, int action,
                            const LearningModel& model) {
  return SocialLearningUpdate(belief.Log(), action, model).ToBelief();
}

bool ActionIsUninformative(const Belief& belief, const LearningModel& model) {
  const Matrix<double> likelihood = ActionLikelihood(belief, model);
  for (std::size_t a = 0; a < likelihood.cols(); ++a) {
    for (std::size_t i = 1; i < likelihood.rows(); ++i) {
      if (std::abs(likelihood(i, a) - likelihood(0, a)) > kFrozenTolerance) {
        return false;
      }
    }
  }
  return true;
}

SocialLearningTrace RunSocialLearning(const LearningModel& model,
                                      std::span<const int> observations) {
  model.Validate();
  SocialLearningTrace trace;
  trace.observations.assign(observations.begin(), observations.end());
  trace.public_beliefs.push_back(model.prior);
  LogBelief current = model.prior.Log();
  for (int y : observations) {
    const Belief eta = BayesPrivate(current, y, model.observation).ToBelief();
    const int action = MyopicAction(eta, model.cost);
    current = SocialLearningUpdate(current, action, model);
    trace.actions.push_back(action);
    trace.public_beliefs.push_back(current.ToBelief());
  }
  return trace;
}

std::optional<int> DetectCascade(std::span<const Belief> public_beliefs,
                                 std::span<const int> actions) {
  const std::size_t K = actions.size();
  if (public_beliefs.size() != K + 1) {
    throw Error(ErrorKind::kDomain,
                "belief trace must have one more entry than the action trace");
  }
  if (K == 0) return std::nullopt;
  auto same = [](const Belief& a, const Belief& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > kFrozenTolerance) return false;
    }
    return true;
  };
  // Walk backwards while the tail stays frozen with a single repeated action.
  std::optional<int> onset;
  for (std::size_t k = K; k-- > 0;) {
    // Candidate onset k needs pi_j == pi_k for j > k and a_{j} == a_{K} for
    // j > k.
    if (!same(public_beliefs[k], public_beliefs[K])) break;
    if (actions[k] != actions[K - 1]) break;
    onset = static_cast<int>(k);
  }
  return onset;
}

std::optional<int> DetectCascade(const SocialLearningTrace& trace,
                                 const LearningModel& model) {
  std::optional<int> onset =
      DetectCascade(trace.public_beliefs, trace.actions);
  if (!onset) return std::nullopt;
  if (!ActionIsUninformative(trace.public_beliefs[*onset], model)) {
    return std::nullopt;
  }
  return onset;
}

bool IsTp2(const Matrix<double>& observation) {
  for (std::size_t i = 0; i + 1 < observation.rows(); ++i) {
    for (std::size_t y = 0; y + 1 < observation.cols(); ++y) {
      const double lhs = observation(i + 1, y) * observation(i, y + 1);
      const double rhs = observation(i, y) * observation(i + 1, y + 1);
      if (lhs - rhs > 1e-12) return false;
    }
  }
  return true;
}

bool IsSubmodular(const Matrix<double>& cost) {
  for (std::size_t x = 0; x + 1 < cost.rows(); ++x) {
    for (std::size_t a = 0; a + 1 < cost.cols(); ++a) {
      const double here = cost(x, a + 1) - cost(x, a);
      const double next = cost(x + 1, a + 1) - cost(x + 1, a);
      if (next - here > 1e-12) return false;
    }
  }
  return true;
}

bool MlrDominates(const Belief& p, const Belief& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::kDomain, "belief sizes differ");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] * q[j] - p[j] * q[i] > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace incestfree
