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

// Social learning on an information-flow DAG (the online reputation
// protocol): each node fuses the public beliefs of its direct predecessors,
// makes a private observation, acts myopically, and the system publishes the
// node's public belief from the action alone.
//
// Fusion is either naive (normalized product, which double counts shared
// ancestors) or fair: a weighted sum of log beliefs with the graph weights
// w_n, which yields P(x | actions of all ancestors) whenever every nonzero
// weight sits on a direct predecessor.

#ifndef INCESTFREE_INCEST_REMOVAL_HPP_
#define INCESTFREE_INCEST_REMOVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "incestfree/belief.hpp"
#include "incestfree/graph.hpp"

namespace incestfree {

enum class FusionMode { kNaive, kFairRating };

std::string_view FusionModeName(FusionMode mode);
FusionMode ParseFusionMode(std::string_view name);

// Normalized entrywise product, computed in the log domain. An empty list
// fuses to `prior`. Throws kZeroLikelihood when the supports are disjoint.
LogBelief NaiveFusion(std::span<const LogBelief> beliefs,
                      const LogBelief& prior);
Belief NaiveFusion(std::span<const Belief> beliefs, const Belief& prior);

// sum_m w(m) l_m over nodes m = 1..w.size(); beliefs[m - 1] may be empty
// where w(m) == 0, otherwise kAchievability is thrown naming node m.
//
// When `prior` is given, (1 - sum_m w(m)) log prior is added so the prior is
// counted exactly once; with a uniform prior this changes nothing. A state
// that any nonzero-weight term rules out (-inf) stays ruled out. All-zero
// weights without a prior give the uniform log belief.
LogBelief FairFusion(std::span<const std::optional<LogBelief>> beliefs,
                     std::span<const std::int64_t> weights,
                     const std::optional<LogBelief>& prior = std::nullopt);

struct NodeRecord {
  NodeId node = 0;
  int observation = 0;
  int action = 0;
  Belief fused_prior = Belief::Uniform(1);      // pi_{n-}
  Belief private_belief = Belief::Uniform(1);   // eta_n
  Belief public_belief = Belief::Uniform(1);    // pi_n
};

struct ProtocolTrace {
  FusionMode mode = FusionMode::kNaive;
  std::vector<NodeRecord> nodes;  // nodes[n - 1]
};

// Processes nodes 1..N in order: fuse predecessors' public beliefs, private
// Bayes update with y_n, myopic action, then the social-learning filter
// applied to the fused prior. Fair mode requires AllAchievable() and throws
// kAchievability otherwise, before any node is processed.
ProtocolTrace RunProtocol1(const InfoFlowGraph& graph,
                           const LearningModel& model,
                           std::span<const int> observations, FusionMode mode);

}  // namespace incestfree

#endif  // INCESTFREE_INCEST_REMOVAL_HPP_
