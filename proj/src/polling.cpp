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

#include "incestfree/polling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "incestfree/errors.hpp"
#include "incestfree/incest_removal.hpp"
#include "incestfree/social_learning.hpp"

namespace incestfree {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckObservations(const InfoFlowGraph& graph, const LearningModel& model,
                       std::span<const int> observations) {
  if (observations.size() != static_cast<std::size_t>(graph.n_nodes())) {
    throw Error(ErrorKind::kDomain,
                "need one observation per node (" +
                    std::to_string(graph.n_nodes()) + "), got " +
                    std::to_string(observations.size()));
  }
  for (int y : observations) {
    if (y < 1 || y > model.observations) {
      throw Error(ErrorKind::kDomain,
                  "observation " + std::to_string(y) + " outside 1.." +
                      std::to_string(model.observations));
    }
  }
}

// Protocol-2 replay over the nodes flagged in `active` (every active node's
// predecessors must be active too). Entries for inactive nodes stay empty.
std::vector<std::optional<LogBelief>> ReplayProtocol2(
    const InfoFlowGraph& graph, const LearningModel& model,
    const LogBelief& prior, std::span<const int> observations,
    const std::vector<bool>& active) {
  const int N = graph.n_nodes();
  std::vector<std::optional<LogBelief>> logs(N);
  for (NodeId n = 1; n <= N; ++n) {
    if (!active[n - 1]) continue;
    const NodeSet parents = graph.OneHop(n);
    std::vector<LogBelief> inputs;
    inputs.reserve(parents.size());
    for (NodeId m : parents) inputs.push_back(*logs[m - 1]);
    const LogBelief fused = NaiveFusion(inputs, prior);
    logs[n - 1] = BayesPrivate(fused, observations[n - 1], model.observation);
  }
  return logs;
}

// Nodes m in F_n plus n itself, ascending.
std::vector<NodeId> ClosedAncestors(const InfoFlowGraph& graph, NodeId node) {
  NodeSet set = graph.MultiHop(node);
  set.insert(node);
  return {set.begin(), set.end()};
}

}  // namespace

std::vector<Belief> RunProtocol2(const InfoFlowGraph& graph,
                                 const LearningModel& model,
                                 std::span<const int> observations) {
  model.Validate();
  CheckObservations(graph, model, observations);
  const std::vector<bool> all(graph.n_nodes(), true);
  const auto logs =
      ReplayProtocol2(graph, model, model.prior.Log(), observations, all);
  std::vector<Belief> beliefs;
  beliefs.reserve(logs.size());
  for (const auto& l : logs) beliefs.push_back(l->ToBelief());
  return beliefs;
}

std::vector<std::vector<double>> RunProtocol2Unnormalized(
    const InfoFlowGraph& graph, const LearningModel& model,
    std::span<const int> observations) {
  model.Validate();
  CheckObservations(graph, model, observations);
  const int N = graph.n_nodes();
  const auto X = static_cast<std::size_t>(model.states);
  auto log_or_neg_inf = [](double p) { return p > 0.0 ? std::log(p) : kNegInf; };
  std::vector<std::vector<double>> logs(N, std::vector<double>(X, 0.0));
  for (NodeId n = 1; n <= N; ++n) {
    const NodeSet parents = graph.OneHop(n);
    for (std::size_t x = 0; x < X; ++x) {
      double l = log_or_neg_inf(model.observation(x, observations[n - 1] - 1));
      if (parents.empty()) {
        l += log_or_neg_inf(model.prior[x]);
      } else {
        for (NodeId m : parents) l += logs[m - 1][x];
      }
      logs[n - 1][x] = l;
    }
  }
  return logs;
}

ObservationMatrixContext BuildObservationContext(
    const InfoFlowGraph& graph, const LearningModel& model,
    std::span<const NodeId> recruits, std::span<const int> observations) {
  model.Validate();
  CheckObservations(graph, model, observations);
  const int N = graph.n_nodes();
  ObservationMatrixContext ctx;
  ctx.recruits.assign(recruits.begin(), recruits.end());
  ctx.paths = Matrix<std::int64_t>(recruits.size(), N, 0);
  for (std::size_t r = 0; r < recruits.size(); ++r) {
    for (NodeId m = 1; m <= N; ++m) {
      ctx.paths(r, m - 1) = graph.PathCount(m, recruits[r]);
    }
  }
  ctx.roots.assign(N, 0);
  for (NodeId n = 1; n <= N; ++n) {
    ctx.roots[n - 1] = graph.OneHop(n).empty() ? 1 : 0;
  }
  ctx.log_likelihood.assign(model.states, std::vector<double>(N, 0.0));
  for (int x = 0; x < model.states; ++x) {
    for (NodeId n = 1; n <= N; ++n) {
      const double b = model.observation(x, observations[n - 1] - 1);
      ctx.log_likelihood[x][n - 1] = b > 0.0 ? std::log(b) : kNegInf;
    }
  }
  return ctx;
}

double ObservationIdentityResidual(
    const ObservationMatrixContext& context, const LearningModel& model,
    const std::vector<std::vector<double>>& unnormalized_logs) {
  double worst = 0.0;
  const std::size_t N = context.roots.size();
  for (std::size_t r = 0; r < context.recruits.size(); ++r) {
    const NodeId node = context.recruits[r];
    for (int x = 0; x < model.states; ++x) {
      const double l0 = std::log(model.prior[x]);
      double lhs = 0.0;
      for (std::size_t m = 0; m < N; ++m) {
        const auto count = static_cast<double>(context.paths(r, m));
        if (count == 0.0) continue;
        lhs += count * (context.log_likelihood[x][m] +
                        static_cast<double>(context.roots[m]) * l0);
      }
      const double rhs = unnormalized_logs[node - 1][x];
      if (std::isinf(lhs) || std::isinf(rhs)) {
        if (lhs != rhs) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

PollCorrection PollCorrectionFor(const InfoFlowGraph& graph, NodeId node) {
  const std::vector<NodeId> closed = ClosedAncestors(graph, node);
  const NodeSet members(closed.begin(), closed.end());
  PollCorrection out;
  std::int64_t roots = 0;
  for (NodeId m : closed) {
    std::int64_t inside_children = 0;
    for (NodeId c : graph.Children(m)) {
      if (members.contains(c)) ++inside_children;
    }
    const std::int64_t coefficient = 1 - inside_children;
    if (coefficient != 0) out.coefficients[m] = coefficient;
    if (graph.OneHop(m).empty()) ++roots;
  }
  out.prior_coefficient = 1 - roots;
  return out;
}

NodeSet PollExtraVoters(const InfoFlowGraph& graph, const NodeSet& recruits) {
  if (recruits.empty()) {
    throw Error(ErrorKind::kDomain, "recruit set must be nonempty");
  }
  NodeSet extra;
  for (NodeId n : recruits) {
    for (const auto& [m, coefficient] : PollCorrectionFor(graph, n).coefficients) {
      if (!recruits.contains(m)) extra.insert(m);
    }
  }
  return extra;
}

std::map<NodeId, LogBelief> ExactPollCorrection(
    const PollRun& run, const std::map<NodeId, Belief>& extra_beliefs) {
  if (run.graph == nullptr || run.model == nullptr) {
    throw Error(ErrorKind::kDomain, "poll run has no graph or model");
  }
  if (run.recruits.empty()) {
    throw Error(ErrorKind::kDomain, "recruit set must be nonempty");
  }
  const InfoFlowGraph& graph = *run.graph;
  const auto X = static_cast<std::size_t>(run.model->states);
  auto belief_of = [&](NodeId m) -> const Belief& {
    if (run.recruits.contains(m)) {
      if (static_cast<std::size_t>(m) > run.beliefs.size()) {
        throw Error(ErrorKind::kMissingBelief,
                    "no belief recorded for recruit " + std::to_string(m));
      }
      return run.beliefs[m - 1];
    }
    auto it = extra_beliefs.find(m);
    if (it == extra_beliefs.end()) {
      throw Error(ErrorKind::kMissingBelief,
                  "exact correction needs the belief of node " +
                      std::to_string(m));
    }
    return it->second;
  };

  std::map<NodeId, LogBelief> corrected;
  const LogBelief prior_log = run.model->prior.Log();
  for (NodeId n : run.recruits) {
    const PollCorrection correction = PollCorrectionFor(graph, n);
    std::vector<double> out(X, 0.0);
    std::vector<bool> excluded(X, false);
    auto accumulate = [&](std::span<const double> logs, double coefficient) {
      for (std::size_t i = 0; i < X; ++i) {
        if (logs[i] == kNegInf) {
          excluded[i] = true;
        } else {
          out[i] += coefficient * logs[i];
        }
      }
    };
    for (const auto& [m, coefficient] : correction.coefficients) {
      const LogBelief l = belief_of(m).Log();
      accumulate(l.logs(), static_cast<double>(coefficient));
    }
    if (correction.prior_coefficient != 0) {
      accumulate(prior_log.logs(),
                 static_cast<double>(correction.prior_coefficient));
    }
    for (std::size_t i = 0; i < X; ++i) {
      if (excluded[i]) out[i] = kNegInf;
    }
    corrected.emplace(n, LogBelief(std::move(out)));
  }
  return corrected;
}

Belief ExactPosterior(const InfoFlowGraph& graph, const LearningModel& model,
                      std::span<const int> observations, NodeId node) {
  model.Validate();
  CheckObservations(graph, model, observations);
  std::vector<double> logs(model.states);
  for (int x = 0; x < model.states; ++x) {
    logs[x] = model.prior[x] > 0.0 ? std::log(model.prior[x]) : kNegInf;
  }
  for (NodeId m : ClosedAncestors(graph, node)) {
    for (int x = 0; x < model.states; ++x) {
      const double b = model.observation(x, observations[m - 1] - 1);
      logs[x] = b > 0.0 ? logs[x] + std::log(b) : kNegInf;
    }
  }
  return LogBelief(std::move(logs)).ToBelief();
}

IncestiousPosterior::IncestiousPosterior(const InfoFlowGraph& graph,
                                         const LearningModel& model,
                                         const NodeSet& recruits)
    : recruits_(recruits.begin(), recruits.end()),
      states_(static_cast<std::size_t>(model.states)) {
  model.Validate();
  if (recruits.empty()) {
    throw Error(ErrorKind::kDomain, "recruit set must be nonempty");
  }
  const int N = graph.n_nodes();
  for (NodeId r : recruits) {
    if (r < 1 || r > N) {
      throw Error(ErrorKind::kDomain,
                  "recruit " + std::to_string(r) + " outside 1.." +
                      std::to_string(N));
    }
  }
  std::vector<bool> active(N, false);
  for (NodeId r : recruits) {
    for (NodeId m : ClosedAncestors(graph, r)) active[m - 1] = true;
  }
  std::vector<NodeId> free_nodes;
  for (NodeId n = 1; n <= N; ++n) {
    if (active[n - 1]) free_nodes.push_back(n);
  }
  const double candidates =
      std::pow(static_cast<double>(model.observations),
               static_cast<double>(free_nodes.size()));
  if (candidates > kMaxEnumeratedSequences) {
    throw Error(ErrorKind::kCapacity,
                "posterior enumeration needs " + std::to_string(candidates) +
                    " observation sequences (limit 1e7)");
  }

  const LogBelief prior_log = model.prior.Log();
  std::vector<double> log_prior(states_);
  for (std::size_t x = 0; x < states_; ++x) log_prior[x] = prior_log[x];

  std::vector<int> observations(N, 1);
  std::map<std::vector<double>, std::size_t> index;
  const std::size_t total = static_cast<std::size_t>(candidates);
  for (std::size_t s = 0; s < total; ++s) {
    // Odometer decode of s into the free nodes' observations.
    std::size_t rest = s;
    for (NodeId n : free_nodes) {
      observations[n - 1] = static_cast<int>(rest % model.observations) + 1;
      rest /= model.observations;
    }
    ++sequence_count_;

    std::vector<double> mass(states_, 0.0);
    bool any_mass = false;
    for (std::size_t x = 0; x < states_; ++x) {
      double p = model.prior[x];
      for (NodeId n : free_nodes) p *= model.observation(x, observations[n - 1] - 1);
      mass[x] = p;
      any_mass = any_mass || p > 0.0;
    }
    if (!any_mass) continue;

    std::vector<std::optional<LogBelief>> logs;
    try {
      logs = ReplayProtocol2(graph, model, prior_log, observations, active);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kZeroLikelihood) throw;
      continue;
    }
    std::vector<Belief> signature;
    std::vector<double> key;
    signature.reserve(recruits_.size());
    for (NodeId r : recruits_) {
      signature.push_back(logs[r - 1]->ToBelief());
      const auto probs = signature.back().probs();
      key.insert(key.end(), probs.begin(), probs.end());
    }
    // Only bitwise-identical signatures share a group; the tolerance is
    // applied at query time.
    auto [it, inserted] = index.try_emplace(std::move(key), groups_.size());
    if (inserted) {
      groups_.push_back({std::move(signature), std::vector<double>(states_, 0.0)});
    }
    Group& g = groups_[it->second];
    for (std::size_t x = 0; x < states_; ++x) g.mass[x] += mass[x];
  }
}

Belief IncestiousPosterior::Posterior(
    std::span<const Belief> recruit_beliefs) const {
  if (recruit_beliefs.size() != recruits_.size()) {
    throw Error(ErrorKind::kDomain,
                "expected " + std::to_string(recruits_.size()) +
                    " recruit beliefs, got " +
                    std::to_string(recruit_beliefs.size()));
  }
  for (const Belief& b : recruit_beliefs) {
    if (b.size() != states_) {
      throw Error(ErrorKind::kDomain, "recruit belief has the wrong size");
    }
  }
  std::vector<double> mass(states_, 0.0);
  bool matched = false;
  for (const Group& g : groups_) {
    bool same = true;
    for (std::size_t r = 0; r < recruits_.size() && same; ++r) {
      same = TotalVariation(g.beliefs[r], recruit_beliefs[r]) <=
             kBeliefMatchTolerance;
    }
    if (!same) continue;
    matched = true;
    for (std::size_t x = 0; x < states_; ++x) mass[x] += g.mass[x];
  }
  if (!matched) {
    throw Error(ErrorKind::kInconsistentBeliefs,
                "no observation sequence reproduces the recruit beliefs");
  }
  return Belief::Normalized(std::move(mass));
}

Belief PosteriorFromIncestious(const InfoFlowGraph& graph,
                               const LearningModel& model,
                               const NodeSet& recruits,
                               std::span<const Belief> recruit_beliefs) {
  return IncestiousPosterior(graph, model, recruits).Posterior(recruit_beliefs);
}

}  // namespace incestfree
