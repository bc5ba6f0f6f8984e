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

// Seeded Monte Carlo experiments over the named networks, and the fixed
// star-network polling example.
//
// Every run r draws from its own stream: mt19937_64 seeded with
// splitmix64(seed ^ splitmix64(r + 1)). Uniforms are (draw >> 11) * 2^-53
// and discrete variables are sampled by inverse CDF. Per-run squared errors
// are summed in run order, so a report does not depend on the worker count.

#ifndef INCESTFREE_HARNESS_HPP_
#define INCESTFREE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "incestfree/belief.hpp"
#include "incestfree/graph.hpp"

namespace incestfree {

inline constexpr std::string_view kRngDescription =
    "mt19937_64; run stream seed = splitmix64(seed ^ splitmix64(run + 1)); "
    "uniform = (draw >> 11) * 2^-53; inverse-CDF sampling";

std::uint64_t SplitMix64(std::uint64_t x);
std::mt19937_64 RunStream(std::uint64_t seed, std::uint64_t run);
double Uniform01(std::mt19937_64& rng);
// 1-based index drawn from a probability vector.
int SampleIndex(std::mt19937_64& rng, std::span<const double> probs);

// corporate, corporate_no_110, mesh, appendix, star_poll(L) / star_poll:L.
// Throws kParse for an unknown name.
InfoFlowGraph BuildNamedNetwork(std::string_view name);

enum class ExperimentKind { kSocialLearning, kPolling };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSocialLearning;
  std::string network;  // name, or "custom" for an explicit graph
  std::optional<InfoFlowGraph> graph;
  LearningModel model;
  int runs = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  // Social learning: naive, fair. Polling: naive, exact_poll,
  // incestious_posterior. Empty selects all of them.
  std::vector<std::string> estimators;
  // Social learning: nodes to report (empty selects the incest nodes).
  std::vector<NodeId> nodes;
  // Social learning: score E{x} under the public belief pi_n instead of
  // the private belief eta_n.
  bool public_estimate = false;
  // Polling: recruit sets, each including its pollster (largest node).
  std::vector<NodeSet> recruit_sets;
};

// The reference experiment settings for a named network: the
// Gaussian 10-state model for social learning, the binary [0.4, 0.6] model
// and the published recruit sets for polling.
ExperimentConfig DefaultSocialLearningConfig(std::string_view network);
ExperimentConfig DefaultPollingConfig(std::string_view network);

struct ReportRow {
  NodeId node = 0;
  std::string estimator;
  std::string recruits;  // polling only, e.g. "8 9 10"
  double mse = 0.0;
};

struct SimReport {
  std::string kind;
  std::string network;
  int runs = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string rng{kRngDescription};
  double wall_seconds = 0.0;
  std::vector<ReportRow> rows;

  // Throws kDomain when no row matches.
  double Mse(NodeId node, std::string_view estimator) const;
  double PollMse(const NodeSet& recruits) const;
  double NaivePollMse() const;
};

// Per run: x from the prior, y_n from B(x, .), Protocol 1 under each
// estimator, squared error of E{x} under the private belief eta_n (or the
// public belief, see ExperimentConfig).
SimReport MonteCarloSocialLearning(const ExperimentConfig& config);

// Per run: x, y as above, Protocol 2, then the conditional mean given the
// recruits' beliefs for every recruit set, the exact-correction estimate at
// the pollster and the naive estimate E{x} under the pollster's belief.
SimReport MonteCarloPolling(const ExperimentConfig& config);

SimReport RunExperiment(const ExperimentConfig& config);

std::string FormatNodeSet(const NodeSet& nodes);

struct ExtremeExampleResult {
  double naive = 0.0;       // pi_{L+2}(1) from Protocol 2
  double exact = 0.0;       // P(x = 1 | y_1..y_{L+2}), node 1 also polled
  double incestious = 0.0;  // P(x = 1 | pi_{L+2})
};

// Star network with L recruits between node 1 and the pollster. Defaults
// are the published setting: L = 6, uniform prior, B = [[.8, .2], [.2, .8]]
// and observations [2, 1, 1, 1, 1, 1, 1, 2].
struct ExtremeExampleInput {
  int recruits = 6;
  LearningModel model = BinaryModel(0.8, Belief::Uniform(2));
  std::vector<int> observations{2, 1, 1, 1, 1, 1, 1, 2};
};
ExtremeExampleResult RunExtremeExample(
    const ExtremeExampleInput& input = ExtremeExampleInput{});

}  // namespace incestfree

#endif  // INCESTFREE_HARNESS_HPP_
