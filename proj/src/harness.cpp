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

#include "incestfree/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "incestfree/errors.hpp"
#include "incestfree/incest_removal.hpp"
#include "incestfree/polling.hpp"

namespace incestfree {
namespace {

const std::vector<Edge>& CorporateEdges() {
  static const std::vector<Edge> edges{
      {1, 2}, {1, 3}, {1, 10}, {2, 4}, {2, 5}, {2, 8}, {3, 6}, {3, 7},
      {3, 9}, {4, 8}, {5, 8},  {6, 9}, {7, 9}, {8, 10}, {9, 10}};
  return edges;
}

std::optional<int> StarSize(std::string_view name) {
  std::string_view rest;
  if (name.starts_with("star_poll(") && name.ends_with(")")) {
    rest = name.substr(10, name.size() - 11);
  } else if (name.starts_with("star_poll:")) {
    rest = name.substr(10);
  } else {
    return std::nullopt;
  }
  int L = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), L);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || L < 1) {
    throw Error(ErrorKind::kParse,
                "bad star_poll size in '" + std::string(name) + "'");
  }
  return L;
}

// Calls body(run) for every run, spread over the given number of threads.
template <class Body>
void ForEachRun(int runs, int workers, Body body) {
  workers = std::max(1, std::min(workers, runs));
  if (workers == 1) {
    for (int r = 0; r < runs; ++r) body(r);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int r = w; r < runs; r += workers) body(r);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::vector<int> DrawObservations(std::mt19937_64& rng,
                                  const LearningModel& model, int x,
                                  int n_nodes) {
  const Matrix<double>& B = model.observation;
  std::vector<int> y(n_nodes);
  for (int n = 0; n < n_nodes; ++n) y[n] = SampleIndex(rng, B.row(x - 1));
  return y;
}

bool Wants(const std::vector<std::string>& estimators, std::string_view name) {
  return estimators.empty() ||
         std::find(estimators.begin(), estimators.end(), name) !=
             estimators.end();
}

void CheckRuns(const ExperimentConfig& config) {
  if (config.runs < 1) {
    throw Error(ErrorKind::kDomain, "runs must be at least 1");
  }
  if (!config.graph) {
    throw Error(ErrorKind::kDomain, "experiment has no graph");
  }
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 RunStream(std::uint64_t seed, std::uint64_t run) {
  return std::mt19937_64(SplitMix64(seed ^ SplitMix64(run + 1)));
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int SampleIndex(std::mt19937_64& rng, std::span<const double> probs) {
  const double u = Uniform01(rng);
  double cumulative = 0.0;
  int last_positive = 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cumulative += probs[i];
    last_positive = static_cast<int>(i) + 1;
    if (u < cumulative) return last_positive;
  }
  return last_positive;  // rounding left u above the running sum
}

InfoFlowGraph BuildNamedNetwork(std::string_view name) {
  if (name == "corporate") return InfoFlowGraph(10, CorporateEdges());
  if (name == "corporate_no_110") {
    std::vector<Edge> edges;
    for (const Edge& e : CorporateEdges()) {
      if (e != Edge{1, 10}) edges.push_back(e);
    }
    return InfoFlowGraph(10, edges);
  }
  if (name == "mesh") {
    return InfoFlowGraph(9, {{1, 2}, {1, 6}, {2, 3}, {2, 5}, {3, 4}, {4, 5},
                             {4, 9}, {5, 6}, {5, 8}, {6, 7}, {7, 8}, {8, 9}});
  }
  if (name == "appendix") {
    return InfoFlowGraph(8, {{1, 3}, {1, 4}, {1, 7}, {2, 4}, {3, 5}, {4, 6},
                             {5, 7}, {6, 7}, {6, 8}});
  }
  if (std::optional<int> L = StarSize(name)) {
    std::vector<Edge> edges;
    for (int m = 2; m <= *L + 1; ++m) {
      edges.emplace_back(1, m);
      edges.emplace_back(m, *L + 2);
    }
    return InfoFlowGraph(*L + 2, edges);
  }
  throw Error(ErrorKind::kParse,
              "unknown network '" + std::string(name) +
                  "' (expected corporate, corporate_no_110, mesh, appendix "
                  "or star_poll(L))");
}

ExperimentConfig DefaultSocialLearningConfig(std::string_view network) {
  ExperimentConfig config;
  config.kind = ExperimentKind::kSocialLearning;
  config.network = std::string(network);
  config.graph = BuildNamedNetwork(network);
  config.model = GaussianLearningModel(10, 20, 10);
  config.estimators = {"naive", "fair"};
  if (network == "mesh") config.nodes = {5, 6, 7, 8, 9};
  return config;
}

ExperimentConfig DefaultPollingConfig(std::string_view network) {
  ExperimentConfig config;
  config.kind = ExperimentKind::kPolling;
  config.network = std::string(network);
  config.graph = BuildNamedNetwork(network);
  config.model = BinaryModel(0.8, Belief({0.4, 0.6}));
  if (network == "corporate_no_110" || network == "corporate") {
    config.recruit_sets = {{8, 9, 10},
                           {4, 5, 6, 7, 8, 9, 10},
                           {2, 3, 4, 5, 6, 7, 8, 9, 10},
                           {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
  } else if (network == "mesh") {
    config.recruit_sets = {
        {4, 8, 9}, {2, 4, 8, 9}, {1, 2, 3, 4, 5, 6, 7, 8, 9}};
  } else {
    const int N = config.graph->n_nodes();
    NodeSet all;
    for (int n = 1; n <= N; ++n) all.insert(n);
    config.recruit_sets = {{N}, all};
  }
  return config;
}

std::string FormatNodeSet(const NodeSet& nodes) {
  std::string out;
  for (NodeId n : nodes) {
    if (!out.empty()) out += ' ';
    out += std::to_string(n);
  }
  return out;
}

double SimReport::Mse(NodeId node, std::string_view estimator) const {
  for (const ReportRow& row : rows) {
    if (row.node == node && row.estimator == estimator && row.recruits.empty()) {
      return row.mse;
    }
  }
  throw Error(ErrorKind::kDomain, "report has no row for node " +
                                      std::to_string(node) + " / " +
                                      std::string(estimator));
}

double SimReport::PollMse(const NodeSet& recruits) const {
  const std::string key = FormatNodeSet(recruits);
  for (const ReportRow& row : rows) {
    if (row.estimator == "incestious_posterior" && row.recruits == key) {
      return row.mse;
    }
  }
  throw Error(ErrorKind::kDomain, "report has no row for recruits {" + key + "}");
}

double SimReport::NaivePollMse() const {
  for (const ReportRow& row : rows) {
    if (row.estimator == "naive" && !row.recruits.empty()) return row.mse;
  }
  throw Error(ErrorKind::kDomain, "report has no naive polling row");
}

SimReport MonteCarloSocialLearning(const ExperimentConfig& config) {
  CheckRuns(config);
  config.model.Validate();
  const auto start = std::chrono::steady_clock::now();
  const InfoFlowGraph& graph = *config.graph;
  const int N = graph.n_nodes();

  std::vector<FusionMode> modes;
  for (const std::string& e : config.estimators) {
    const FusionMode mode = ParseFusionMode(e);
    if (std::find(modes.begin(), modes.end(), mode) == modes.end()) {
      modes.push_back(mode);
    }
  }
  if (modes.empty()) modes = {FusionMode::kNaive, FusionMode::kFairRating};
  if (std::find(modes.begin(), modes.end(), FusionMode::kFairRating) !=
          modes.end() &&
      !graph.AllAchievable()) {
    throw Error(ErrorKind::kAchievability,
                "fair rating is not achievable on network '" + config.network +
                    "'");
  }
  std::vector<NodeId> nodes = config.nodes;
  if (nodes.empty()) {
    const NodeSet incest = graph.IncestNodes();
    nodes.assign(incest.begin(), incest.end());
  }
  for (NodeId n : nodes) {
    if (n < 1 || n > N) {
      throw Error(ErrorKind::kDomain,
                  "report node " + std::to_string(n) + " outside 1.." +
                      std::to_string(N));
    }
  }

  // errors[run][mode * nodes + k]
  const std::size_t width = modes.size() * nodes.size();
  std::vector<std::vector<double>> errors(config.runs);
  ForEachRun(config.runs, config.workers, [&](int run) {
    std::mt19937_64 rng = RunStream(config.seed, static_cast<std::uint64_t>(run));
    const int x = SampleIndex(rng, config.model.prior.probs());
    const std::vector<int> y = DrawObservations(rng, config.model, x, N);
    std::vector<double>& out = errors[run];
    out.resize(width);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const ProtocolTrace trace = RunProtocol1(graph, config.model, y, modes[m]);
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const NodeRecord& record = trace.nodes[nodes[k] - 1];
        const Belief& scored = config.public_estimate ? record.public_belief
                                                      : record.private_belief;
        const double e = scored.Mean() - x;
        out[m * nodes.size() + k] = e * e;
      }
    }
  });

  SimReport report;
  report.kind = "social_learning";
  report.network = config.network;
  report.runs = config.runs;
  report.seed = config.seed;
  report.workers = config.workers;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      double sum = 0.0;
      for (const auto& run : errors) sum += run[m * nodes.size() + k];
      report.rows.push_back({nodes[k], std::string(FusionModeName(modes[m])),
                             "", sum / config.runs});
    }
  }
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

SimReport MonteCarloPolling(const ExperimentConfig& config) {
  CheckRuns(config);
  config.model.Validate();
  const auto start = std::chrono::steady_clock::now();
  const InfoFlowGraph& graph = *config.graph;
  const int N = graph.n_nodes();
  for (const std::string& e : config.estimators) {
    if (e != "naive" && e != "exact_poll" && e != "incestious_posterior") {
      throw Error(ErrorKind::kParse, "unknown polling estimator '" + e + "'");
    }
  }
  const bool want_naive = Wants(config.estimators, "naive");
  const bool want_exact = Wants(config.estimators, "exact_poll");
  const bool want_posterior = Wants(config.estimators, "incestious_posterior");

  std::vector<NodeSet> sets = config.recruit_sets;
  if (sets.empty()) sets = {NodeSet{N}};
  NodeId pollster = 0;
  for (const NodeSet& s : sets) {
    if (s.empty()) throw Error(ErrorKind::kDomain, "empty recruit set");
    if (*s.begin() < 1 || *s.rbegin() > N) {
      throw Error(ErrorKind::kDomain, "recruit outside the network");
    }
    pollster = std::max(pollster, *s.rbegin());
  }
  std::vector<IncestiousPosterior> tables;
  if (want_posterior) {
    for (const NodeSet& s : sets) tables.emplace_back(graph, config.model, s);
  }
  const NodeSet pollster_set{pollster};
  const NodeSet extras = PollExtraVoters(graph, pollster_set);

  const std::size_t width = tables.size() + 2;
  std::vector<std::vector<double>> errors(config.runs);
  ForEachRun(config.runs, config.workers, [&](int run) {
    std::mt19937_64 rng = RunStream(config.seed, static_cast<std::uint64_t>(run));
    const int x = SampleIndex(rng, config.model.prior.probs());
    const std::vector<int> y = DrawObservations(rng, config.model, x, N);
    const std::vector<Belief> beliefs = RunProtocol2(graph, config.model, y);
    std::vector<double>& out = errors[run];
    out.assign(width, 0.0);
    for (std::size_t s = 0; s < tables.size(); ++s) {
      std::vector<Belief> sampled;
      for (NodeId r : tables[s].recruits()) sampled.push_back(beliefs[r - 1]);
      const double e = tables[s].Posterior(sampled).Mean() - x;
      out[s] = e * e;
    }
    if (want_exact) {
      PollRun poll{&graph, &config.model, beliefs, pollster_set};
      std::map<NodeId, Belief> extra;
      for (NodeId m : extras) extra.emplace(m, beliefs[m - 1]);
      const double e =
          ExactPollCorrection(poll, extra).at(pollster).ToBelief().Mean() - x;
      out[tables.size()] = e * e;
    }
    const double e = beliefs[pollster - 1].Mean() - x;
    out[tables.size() + 1] = e * e;
  });

  auto mean_of = [&](std::size_t column) {
    double sum = 0.0;
    for (const auto& run : errors) sum += run[column];
    return sum / config.runs;
  };
  SimReport report;
  report.kind = "polling";
  report.network = config.network;
  report.runs = config.runs;
  report.seed = config.seed;
  report.workers = config.workers;
  for (std::size_t s = 0; s < tables.size(); ++s) {
    report.rows.push_back({*sets[s].rbegin(), "incestious_posterior",
                           FormatNodeSet(sets[s]), mean_of(s)});
  }
  const std::string pollster_label = FormatNodeSet(pollster_set);
  if (want_exact) {
    report.rows.push_back(
        {pollster, "exact_poll", pollster_label, mean_of(tables.size())});
  }
  if (want_naive) {
    report.rows.push_back(
        {pollster, "naive", pollster_label, mean_of(tables.size() + 1)});
  }
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

SimReport RunExperiment(const ExperimentConfig& config) {
  return config.kind == ExperimentKind::kPolling
             ? MonteCarloPolling(config)
             : MonteCarloSocialLearning(config);
}

ExtremeExampleResult RunExtremeExample(const ExtremeExampleInput& input) {
  if (input.recruits < 1) {
    throw Error(ErrorKind::kDomain, "star network needs at least one recruit");
  }
  const InfoFlowGraph graph =
      BuildNamedNetwork("star_poll(" + std::to_string(input.recruits) + ")");
  const int N = graph.n_nodes();
  const std::vector<Belief> beliefs =
      RunProtocol2(graph, input.model, input.observations);

  NodeSet recruits;
  for (NodeId n = 2; n <= N; ++n) recruits.insert(n);
  PollRun poll{&graph, &input.model, beliefs, recruits};
  std::map<NodeId, Belief> extra;
  for (NodeId m : PollExtraVoters(graph, recruits)) {
    extra.emplace(m, beliefs[m - 1]);
  }
  const Belief exact = ExactPollCorrection(poll, extra).at(N).ToBelief();

  const IncestiousPosterior table(graph, input.model, NodeSet{N});
  const std::vector<Belief> pollster_belief{beliefs[N - 1]};

  ExtremeExampleResult result;
  result.naive = beliefs[N - 1][0];
  result.exact = exact[0];
  result.incestious = table.Posterior(pollster_belief)[0];
  return result;
}

}  // namespace incestfree
