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

// incestfree: command line front end.
//
//   incestfree simulate --config experiment.json [--runs N] [--seed S]
//   incestfree poll --config poll.json
//   incestfree extreme
//   incestfree afriat --input dataset.csv [--series series.csv]
//   incestfree ar-fit --input series.csv
//   incestfree graph {closure|weights|check|extra-voters} --config g.json
//
// Exit status: 0 ok, 1 invalid input, 2 capacity or solver failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "incestfree/errors.hpp"
#include "incestfree/graph.hpp"
#include "incestfree/harness.hpp"
#include "incestfree/io.hpp"
#include "incestfree/polling.hpp"
#include "incestfree/revealed_prefs.hpp"

namespace {

using namespace incestfree;

struct Options {
  std::string config;
  std::string input;
  std::string series;
  std::string out;
  std::string network;
  std::string format = "csv";
  std::string recruits;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> workers;
  int node = 0;
};

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw Error(ErrorKind::kParse, "cannot write '" + opt.out + "'");
  file << text;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
  return in;
}

InfoFlowGraph LoadGraph(const Options& opt) {
  if (!opt.network.empty()) return BuildNamedNetwork(opt.network);
  if (opt.config.empty()) {
    throw Error(ErrorKind::kParse, "need --config or --network");
  }
  return GraphFromJson(ReadJsonFile(opt.config));
}

NodeSet ParseNodeList(const std::string& text) {
  NodeSet nodes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      nodes.insert(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "bad node '" + item + "' in --recruits");
    }
  }
  return nodes;
}

std::string JoinInts(std::span<const std::int64_t> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void Simulate(const Options& opt) {
  if (opt.config.empty()) throw Error(ErrorKind::kParse, "need --config");
  ExperimentConfig config = ConfigFromJson(ReadJsonFile(opt.config));
  if (opt.seed) config.seed = *opt.seed;
  if (opt.runs) config.runs = *opt.runs;
  if (opt.workers) config.workers = *opt.workers;
  const SimReport report = RunExperiment(config);
  if (opt.format == "json") {
    Emit(opt, ReportToJson(report).dump(2) + "\n");
  } else {
    std::ostringstream csv;
    WriteReportCsv(csv, report);
    Emit(opt, csv.str());
  }
}

void Poll(const Options& opt) {
  if (opt.config.empty()) throw Error(ErrorKind::kParse, "need --config");
  const PollConfig poll = PollConfigFromJson(ReadJsonFile(opt.config));
  const std::vector<Belief> beliefs =
      RunProtocol2(poll.graph, poll.model, poll.observations);
  const NodeId pollster = poll.pollster;

  PollRun run{&poll.graph, &poll.model, beliefs, poll.recruits};
  std::map<NodeId, Belief> extra;
  for (NodeId m : PollExtraVoters(poll.graph, poll.recruits)) {
    extra.emplace(m, beliefs[m - 1]);
  }
  const Belief exact = ExactPollCorrection(run, extra).at(pollster).ToBelief();

  const IncestiousPosterior table(poll.graph, poll.model, poll.recruits);
  std::vector<Belief> sampled;
  for (NodeId r : poll.recruits) sampled.push_back(beliefs[r - 1]);
  const Belief posterior = table.Posterior(sampled);

  std::ostringstream csv;
  csv.precision(12);
  csv << "estimator,state,probability\n";
  auto rows = [&](const char* name, const Belief& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      csv << name << ',' << i + 1 << ',' << b[i] << '\n';
    }
  };
  rows("naive", beliefs[pollster - 1]);
  rows("incestious_posterior", posterior);
  rows("exact", exact);
  Emit(opt, csv.str());
}

void Extreme(const Options& opt) {
  const ExtremeExampleResult r = RunExtremeExample();
  std::ostringstream csv;
  csv.precision(12);
  csv << "naive,exact,incestious_posterior\n"
      << r.naive << ',' << r.exact << ',' << r.incestious << '\n';
  Emit(opt, csv.str());
}

void Afriat(const Options& opt) {
  if (opt.input.empty()) throw Error(ErrorKind::kParse, "need --input");
  std::ifstream in = OpenInput(opt.input);
  const ChoiceDataset data = ReadChoiceDatasetCsv(in);
  const GarpResult garp = GarpCheck(data);
  const std::optional<AfriatCertificate> cert = AfriatSolve(data);
  std::optional<ArFitResult> ar;
  if (!opt.series.empty()) {
    std::ifstream series_in = OpenInput(opt.series);
    const BeliefSeries series = ReadBeliefSeriesCsv(series_in);
    ar = ArFit(series.belief, series.driver);
  }
  Emit(opt, AfriatReportJson(garp, cert, ar).dump(2) + "\n");
}

void ArFitCommand(const Options& opt) {
  if (opt.input.empty()) throw Error(ErrorKind::kParse, "need --input");
  std::ifstream in = OpenInput(opt.input);
  const BeliefSeries series = ReadBeliefSeriesCsv(in);
  const ArFitResult fit = ArFit(series.belief, series.driver);
  Json report = {{"b", fit.b}, {"residuals", fit.residuals}};
  report["mape"] = std::isnan(fit.mape) ? Json(nullptr) : Json(fit.mape);
  Emit(opt, report.dump(2) + "\n");
}

void GraphClosure(const Options& opt) {
  const InfoFlowGraph graph = LoadGraph(opt);
  std::ostringstream csv;
  const Matrix<int>& T = graph.closure();
  for (std::size_t i = 0; i < T.rows(); ++i) {
    for (std::size_t j = 0; j < T.cols(); ++j) {
      csv << (j ? "," : "") << T(i, j);
    }
    csv << '\n';
  }
  Emit(opt, csv.str());
}

void GraphWeights(const Options& opt) {
  const InfoFlowGraph graph = LoadGraph(opt);
  std::ostringstream out;
  if (opt.node != 0) {
    out << JoinInts(graph.Weights(opt.node)) << '\n';
  } else {
    out << "node,weights\n";
    for (NodeId n = 1; n <= graph.n_nodes(); ++n) {
      out << n << ",\"" << JoinInts(graph.Weights(n)) << "\"\n";
    }
  }
  Emit(opt, out.str());
}

void GraphCheck(const Options& opt) {
  const InfoFlowGraph graph = LoadGraph(opt);
  Json unachievable = Json::array();
  for (NodeId n = 1; n <= graph.n_nodes(); ++n) {
    if (!graph.IsAchievable(n)) unachievable.push_back(n);
  }
  const NodeSet incest = graph.IncestNodes();
  const Json report = {{"n_nodes", graph.n_nodes()},
                       {"edges", graph.edges().size()},
                       {"all_achievable", graph.AllAchievable()},
                       {"unachievable_nodes", unachievable},
                       {"incest_nodes", std::vector<int>(incest.begin(),
                                                         incest.end())}};
  Emit(opt, report.dump(2) + "\n");
}

void GraphExtraVoters(const Options& opt) {
  const InfoFlowGraph graph = LoadGraph(opt);
  if (opt.recruits.empty()) throw Error(ErrorKind::kParse, "need --recruits");
  const NodeSet recruits = ParseNodeList(opt.recruits);
  const NodeSet minimal = MinimalExtraNodes(graph, recruits);
  const NodeSet poll = PollExtraVoters(graph, recruits);
  const Json report = {
      {"recruits", std::vector<int>(recruits.begin(), recruits.end())},
      {"minimal_extra_nodes", std::vector<int>(minimal.begin(), minimal.end())},
      {"poll_extra_voters", std::vector<int>(poll.begin(), poll.end())}};
  Emit(opt, report.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social learning, data incest removal, expectation polling "
               "and revealed preferences"};
  app.require_subcommand(1);
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiment");
  simulate->add_option("--config", opt.config, "experiment JSON")->required();
  simulate->add_option("--seed", opt.seed, "override the seed");
  simulate->add_option("--runs", opt.runs, "override the run count");
  simulate->add_option("--workers", opt.workers, "worker threads");
  simulate->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--out", opt.out, "output file (default stdout)");

  auto* poll = app.add_subcommand("poll", "estimators for one poll");
  poll->add_option("--config", opt.config, "poll JSON")->required();
  poll->add_option("--out", opt.out, "output file");

  auto* extreme = app.add_subcommand("extreme", "star-network polling example");
  extreme->add_option("--out", opt.out, "output file");

  auto* afriat = app.add_subcommand("afriat", "GARP and Afriat certificate");
  afriat->add_option("--input", opt.input, "dataset CSV")->required();
  afriat->add_option("--series", opt.series, "optional belief-series CSV");
  afriat->add_option("--out", opt.out, "output file");

  auto* ar = app.add_subcommand("ar-fit", "fit pi_{t+1} = pi_t + b a_t");
  ar->add_option("--input", opt.input, "belief-series CSV")->required();
  ar->add_option("--out", opt.out, "output file");

  auto* graph = app.add_subcommand("graph", "graph queries");
  graph->require_subcommand(1);
  std::vector<CLI::App*> graph_commands;
  for (const char* name : {"closure", "weights", "check", "extra-voters"}) {
    auto* cmd = graph->add_subcommand(name);
    cmd->add_option("--config", opt.config, "graph JSON");
    cmd->add_option("--network", opt.network, "named network");
    cmd->add_option("--out", opt.out, "output file");
    graph_commands.push_back(cmd);
  }
  graph_commands[1]->add_option("--node", opt.node, "node (default: all)");
  graph_commands[3]->add_option("--recruits", opt.recruits,
                                "comma-separated recruit nodes")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) Simulate(opt);
    if (poll->parsed()) Poll(opt);
    if (extreme->parsed()) Extreme(opt);
    if (afriat->parsed()) Afriat(opt);
    if (ar->parsed()) ArFitCommand(opt);
    if (graph_commands[0]->parsed()) GraphClosure(opt);
    if (graph_commands[1]->parsed()) GraphWeights(opt);
    if (graph_commands[2]->parsed()) GraphCheck(opt);
    if (graph_commands[3]->parsed()) GraphExtraVoters(opt);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what()
              << '\n';
    return ExitCodeFor(e.kind());
  }
  return 0;
}
