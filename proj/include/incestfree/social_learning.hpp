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

// Classical Bayesian social learning on a static state of nature.
//
// One agent step: the agent holds a prior pi, observes y ~ B(x, .), forms
// the private belief eta = B_y pi / 1'B_y pi, takes the myopic action
// argmin_a c_a' eta, and everyone else updates the public belief from the
// action alone with the social-learning filter
//   T(pi, a)(i) ~ P(a | x = i, pi) pi(i),
//   P(a | x = i, pi) = sum_y 1{action(pi, y) = a} B(i, y).
// Observations, actions and states are 1-based throughout.

#ifndef INCESTFREE_SOCIAL_LEARNING_HPP_
#define INCESTFREE_SOCIAL_LEARNING_HPP_

#include <optional>
#include <span>
#include <vector>

#include "incestfree/belief.hpp"
#include "incestfree/matrix.hpp"

namespace incestfree {

// Log-domain private update; throws kZeroLikelihood when y is impossible
// under every state carrying prior mass.
LogBelief BayesPrivate(const LogBelief& prior, int y,
                       const Matrix<double>& observation);
Belief BayesPrivate(const Belief& prior, int y,
                    const Matrix<double>& observation);

// Lowest-index minimizer of c_a' eta. Costs within 1e-12 (relative) of the
// minimum count as ties.
int MyopicAction(const Belief& belief, const Matrix<double>& cost);

// X x A matrix of P(a | x = i, pi); rows sum to 1. Observations that are
// impossible under pi are mapped to the action the agent takes on pi itself.
Matrix<double> ActionLikelihood(const Belief& belief,
                                const LearningModel& model);

// Social-learning filter T(pi, a). Throws kZeroLikelihood if a has zero
// probability under pi.
LogBelief SocialLearningUpdate(const LogBelief& belief, int action,
                               const LearningModel& model);
Belief SocialLearningUpdate(const Belief& belief, int action,
                            const LearningModel& model);

// True when every state produces the same action distribution at pi, so the
// public belief can no longer move.
bool ActionIsUninformative(const Belief& belief, const LearningModel& model);

// A sequential run of classical social learning: public beliefs pi_0..pi_K
// and actions a_1..a_K (actions[k - 1] = a_k).
struct SocialLearningTrace {
  std::vector<Belief> public_beliefs;
  std::vector<int> actions;
  std::vector<int> observations;
};

// Runs agents 1..observations.size() in sequence from the model prior.
SocialLearningTrace RunSocialLearning(const LearningModel& model,
                                      std::span<const int> observations);

// Smallest k such that pi_k = pi_j (within 1e-12 per entry) for every later
// recorded j and all actions after k agree. Needs at least one step after
// k; nullopt when no such k exists.
std::optional<int> DetectCascade(std::span<const Belief> public_beliefs,
                                 std::span<const int> actions);
// Same, but additionally requires the action likelihood at the frozen
// belief to be state independent, which certifies the cascade is permanent.
std::optional<int> DetectCascade(const SocialLearningTrace& trace,
                                 const LearningModel& model);

// B(i+1,y) B(i,y+1) <= B(i,y) B(i+1,y+1) on every adjacent pair
// (difference tolerance 1e-12).
bool IsTp2(const Matrix<double>& observation);

// Decreasing differences: c(x,a+1) - c(x,a) >= c(x+1,a+1) - c(x+1,a).
bool IsSubmodular(const Matrix<double>& cost);

// p MLR-dominates q: p_i q_j <= p_j q_i for all i < j, i.e. the
// likelihood ratio p / q is nondecreasing in the state.
bool MlrDominates(const Belief& p, const Belief& q);

}  // namespace incestfree

#endif  // INCESTFREE_SOCIAL_LEARNING_HPP_
