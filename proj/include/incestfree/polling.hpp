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

// Belief-based expectation polling.
//
// Voters exchange beliefs rather than actions: node n multiplies the beliefs
// of its direct predecessors (naively, so shared ancestors are counted once
// per path), or starts from the prior when it has none, then applies Bayes'
// rule with its own observation. A pollster samples the beliefs of a set of
// recruits and wants P(x | ...) without the double counting.
//
// Two estimators are provided:
//  * exact correction, which also samples a few extra voters and undoes the
//    path multiplicities algebraically, giving P(x | observations of every
//    node that reaches the recruit);
//  * the posterior given the incest-contaminated recruit beliefs alone,
//    obtained by enumerating every observation sequence that reproduces
//    those beliefs.

#ifndef INCESTFREE_POLLING_HPP_
#define INCESTFREE_POLLING_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "incestfree/belief.hpp"
#include "incestfree/graph.hpp"
#include "incestfree/matrix.hpp"

namespace incestfree {

inline constexpr double kBeliefMatchTolerance = 1e-9;
inline constexpr double kMaxEnumeratedSequences = 1e7;

// Per-node beliefs pi_1..pi_N (result[n - 1]). Throws kZeroLikelihood.
std::vector<Belief> RunProtocol2(const InfoFlowGraph& graph,
                                 const LearningModel& model,
                                 std::span<const int> observations);

// Same recursion without any normalization: l_n = log B(., y_n) + sum over
// predecessors of l_m, and l_n = log B(., y_n) + log pi_0 at roots.
// result[n - 1][x - 1].
std::vector<std::vector<double>> RunProtocol2Unnormalized(
    const InfoFlowGraph& graph, const LearningModel& model,
    std::span<const int> observations);

// Linear structure of the unnormalized recursion restricted to recruits:
//   l_R(x) = O o(x) + O r log pi_0(x),
// with O the recruit rows of the path-count matrix (I - A')^{-1}, o(x) the
// per-node log-likelihoods and r the indicator of root nodes (for graphs
// whose only root is node 1, r = e_1).
struct ObservationMatrixContext {
  std::vector<NodeId> recruits;
  Matrix<std::int64_t> paths;            // L x N
  std::vector<int> roots;                // length N, 0/1
  std::vector<std::vector<double>> log_likelihood;  // [x - 1][n - 1]
};

ObservationMatrixContext BuildObservationContext(
    const InfoFlowGraph& graph, const LearningModel& model,
    std::span<const NodeId> recruits, std::span<const int> observations);

// Max over recruits and states of |O o(x) + O r l_0(x) - l_R(x)| against the
// unnormalized replay.
double ObservationIdentityResidual(const ObservationMatrixContext& context,
                                   const LearningModel& model,
                                   const std::vector<std::vector<double>>&
                                       unnormalized_logs);

// A poll: graph, model, Protocol-2 beliefs, and the recruits (the pollster
// is the largest recruit).
struct PollRun {
  const InfoFlowGraph* graph = nullptr;
  const LearningModel* model = nullptr;
  std::vector<Belief> beliefs;
  NodeSet recruits;

  NodeId pollster() const { return *recruits.rbegin(); }
};

// Reconstruction coefficients for node n under Protocol-2 dynamics: the
// incest-free log posterior is sum_m coefficient(m) l_m +
// prior_coefficient * log pi_0, over m in F_n and n itself.
struct PollCorrection {
  std::map<NodeId, std::int64_t> coefficients;  // nonzero entries only
  std::int64_t prior_coefficient = 0;
};
PollCorrection PollCorrectionFor(const InfoFlowGraph& graph, NodeId node);

// Voters outside `recruits` whose beliefs the exact correction needs.
NodeSet PollExtraVoters(const InfoFlowGraph& graph, const NodeSet& recruits);

// Incest-free log posterior for every recruit. `extra_beliefs` supplies
// beliefs for non-recruits; a missing one raises kMissingBelief naming the
// node. At recruit n the result is log P(x | y_m, m in F_n and n).
std::map<NodeId, LogBelief> ExactPollCorrection(
    const PollRun& run, const std::map<NodeId, Belief>& extra_beliefs);

// P(x | y_1..y_n) for one node's closed ancestor set, computed directly.
Belief ExactPosterior(const InfoFlowGraph& graph, const LearningModel& model,
                      std::span<const int> observations, NodeId node);

// Enumeration table for P(x | recruit beliefs). Only nodes reaching some
// recruit are enumerated (the others marginalize out). Construction throws
// kCapacity above 1e7 candidate sequences.
class IncestiousPosterior {
 public:
  IncestiousPosterior(const InfoFlowGraph& graph, const LearningModel& model,
                      const NodeSet& recruits);

  // recruit_beliefs follow the ascending order of the recruit set. Throws
  // kInconsistentBeliefs when no sequence reproduces them within total
  // variation 1e-9 at every recruit.
  Belief Posterior(std::span<const Belief> recruit_beliefs) const;

  std::size_t sequence_count() const noexcept { return sequence_count_; }
  std::size_t signature_count() const noexcept { return groups_.size(); }
  const std::vector<NodeId>& recruits() const noexcept { return recruits_; }

 private:
  struct Group {
    std::vector<Belief> beliefs;  // representative recruit beliefs
    std::vector<double> mass;     // sum over members of pi_0(x) P(Y | x)
  };

  std::vector<NodeId> recruits_;
  std::size_t states_ = 0;
  std::size_t sequence_count_ = 0;
  std::vector<Group> groups_;
};

Belief PosteriorFromIncestious(const InfoFlowGraph& graph,
                               const LearningModel& model,
                               const NodeSet& recruits,
                               std::span<const Belief> recruit_beliefs);

}  // namespace incestfree

#endif  // INCESTFREE_POLLING_HPP_
