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

#include "incestfree/incest_removal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "incestfree/errors.hpp"
#include "incestfree/social_learning.hpp"

namespace incestfree {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::string_view FusionModeName(FusionMode mode) {
  return mode == FusionMode::kNaive ? "naive" : "fair";
}

FusionMode ParseFusionMode(std::string_view name) {
  if (name == "naive") return FusionMode::kNaive;
  if (name == "fair" || name == "fair_rating") return FusionMode::kFairRating;
  throw Error(ErrorKind::kParse,
              "unknown fusion mode '" + std::string(name) + "'");
}

LogBelief NaiveFusion(std::span<const LogBelief> beliefs,
                      const LogBelief& prior) {
  if (beliefs.empty()) return prior;
  std::vector<double> sum(beliefs.front().size(), 0.0);
  for (const LogBelief& b : beliefs) {
    if (b.size() != sum.size()) {
      throw Error(ErrorKind::kDomain, "belief sizes differ");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
  }
  try {
    return LogBelief(std::move(sum));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kZeroLikelihood) {
      throw Error(ErrorKind::kZeroLikelihood,
                  "naive fusion of beliefs with disjoint supports");
    }
    throw;
  }
}

Belief NaiveFusion(std::span<const Belief> beliefs, const Belief& prior) {
  std::vector<LogBelief> logs;
  logs.reserve(beliefs.size());
  for (const Belief& b : beliefs) logs.push_back(b.Log());
  return NaiveFusion(logs, prior.Log()).ToBelief();
}

LogBelief FairFusion(std::span<const std::optional<LogBelief>> beliefs,
                     std::span<const std::int64_t> weights,
                     const std::optional<LogBelief>& prior) {
  if (beliefs.size() < weights.size()) {
    throw Error(ErrorKind::kDomain, "fewer beliefs than weights");
  }
  std::size_t states = prior ? prior->size() : 0;
  std::int64_t weight_sum = 0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] == 0) continue;
    if (!beliefs[m]) {
      throw Error(ErrorKind::kAchievability,
                  "fair fusion needs the belief of node " +
                      std::to_string(m + 1) + " (weight " +
                      std::to_string(weights[m]) + ")");
    }
    if (states == 0) states = beliefs[m]->size();
    if (beliefs[m]->size() != states) {
      throw Error(ErrorKind::kDomain, "belief sizes differ");
    }
    weight_sum += weights[m];
  }
  if (states == 0) {
    // No prior and no contributing belief: size is taken from any supplied
    // belief.
    for (const auto& b : beliefs) {
      if (b) {
        states = b->size();
        break;
      }
    }
    if (states == 0) {
      throw Error(ErrorKind::kDomain, "cannot infer the number of states");
    }
    return LogBelief::Uniform(states);
  }

  std::vector<double> out(states, 0.0);
  std::vector<bool> excluded(states, false);
  auto accumulate = [&](const LogBelief& l, double coefficient) {
    for (std::size_t i = 0; i < states; ++i) {
      if (l[i] == kNegInf) {
        excluded[i] = true;
      } else {
        out[i] += coefficient * l[i];
      }
    }
  };
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] != 0) {
      accumulate(*beliefs[m], static_cast<double>(weights[m]));
    }
  }
  if (prior && weight_sum != 1) {
    accumulate(*prior, static_cast<double>(1 - weight_sum));
  }
  for (std::size_t i = 0; i < states; ++i) {
    if (excluded[i]) out[i] = kNegInf;
  }
  return LogBelief(std::move(out));
}

ProtocolTrace RunProtocol1(const InfoFlowGraph& graph,
                           const LearningModel& model,
                           std::span<const int> observations,
                           FusionMode mode) {
  model.Validate();
  const int N = graph.n_nodes();
  if (observations.size() != static_cast<std::size_t>(N)) {
    throw Error(ErrorKind::kDomain,
                "need one observation per node (" + std::to_string(N) +
                    "), got " + std::to_string(observations.size()));
  }
  if (mode == FusionMode::kFairRating) {
    for (NodeId n = 1; n <= N; ++n) {
      if (!graph.IsAchievable(n)) {
        throw Error(ErrorKind::kAchievability,
                    "fair rating is not achievable at node " +
                        std::to_string(n) +
                        ": a nonzero weight falls outside its direct "
                        "predecessors");
      }
    }
  }

  const LogBelief prior = model.prior.Log();
  std::vector<std::optional<LogBelief>> public_logs(N);
  ProtocolTrace trace;
  trace.mode = mode;
  trace.nodes.reserve(N);
  for (NodeId n = 1; n <= N; ++n) {
    LogBelief fused = prior;
    if (mode == FusionMode::kNaive) {
      std::vector<LogBelief> parents;
      for (NodeId m : graph.OneHop(n)) parents.push_back(*public_logs[m - 1]);
      fused = NaiveFusion(parents, prior);
    } else {
      fused = FairFusion(std::span(public_logs).first(n - 1),
                         graph.Weights(n), prior);
    }
    const int y = observations[n - 1];
    const LogBelief eta = BayesPrivate(fused, y, model.observation);
    const Belief eta_belief = eta.ToBelief();
    const int action = MyopicAction(eta_belief, model.cost);
    LogBelief published = SocialLearningUpdate(fused, action, model);

    NodeRecord record;
    record.node = n;
    record.observation = y;
    record.action = action;
    record.fused_prior = fused.ToBelief();
    record.private_belief = eta_belief;
    record.public_belief = published.ToBelief();
    trace.nodes.push_back(std::move(record));
    public_logs[n - 1] = std::move(published);
  }
  return trace;
}

}  // namespace incestfree
