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

#include "incestfree/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "incestfree/errors.hpp"

namespace incestfree {
namespace {

[[noreturn]] void ParseFail(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    ParseFail(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

// Converts with nlohmann and reports type problems against the field name.
template <class T>
T As(const Json& j, const char* name) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    ParseFail(std::string("field '") + name + "': " + e.what());
  }
}

template <class T>
T Get(const Json& j, const char* name) {
  return As<T>(Field(j, name), name);
}

template <class T>
T GetOr(const Json& j, const char* name, T fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  return As<T>(j.at(name), name);
}

Matrix<double> MatrixField(const Json& j, const char* name) {
  const auto rows = Get<std::vector<std::vector<double>>>(j, name);
  try {
    return Matrix<double>::FromRows(rows);
  } catch (const std::exception& e) {
    ParseFail(std::string("field '") + name + "': " + e.what());
  }
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? std::string()
                        : cell.substr(first, last - first + 1));
  }
  return cells;
}

double ParseNumber(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    ParseFail("line " + std::to_string(line) + ": '" + cell +
              "' is not a number");
  }
}

// Reads the header and numeric rows of a CSV stream.
std::vector<std::vector<double>> ReadNumericCsv(
    std::istream& in, std::vector<std::string>& header) {
  std::string line;
  std::size_t line_no = 0;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = SplitCsvLine(line);
  }
  if (header.empty()) ParseFail("CSV input is empty");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      ParseFail("line " + std::to_string(line_no) + ": expected " +
                std::to_string(header.size()) + " columns, got " +
                std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(ParseNumber(c, line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<NodeSet> NodeSetsField(const Json& j, const char* name) {
  std::vector<NodeSet> sets;
  for (const auto& v : Get<std::vector<std::vector<int>>>(j, name)) {
    sets.emplace_back(v.begin(), v.end());
  }
  return sets;
}

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    ParseFail(std::string("invalid JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) ParseFail("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

InfoFlowGraph GraphFromJson(const Json& j) {
  if (j.is_string()) return BuildNamedNetwork(j.get<std::string>());
  if (j.is_object() && j.contains("network") && !j.contains("n_nodes")) {
    return GraphFromJson(j.at("network"));
  }
  const int n_nodes = Get<int>(j, "n_nodes");
  if (n_nodes < 1) ParseFail("field 'n_nodes' must be positive");
  const auto pairs = Get<std::vector<std::vector<int>>>(j, "edges");
  std::vector<Edge> edges;
  for (const auto& p : pairs) {
    if (p.size() != 2) ParseFail("field 'edges': each edge needs two nodes");
    edges.emplace_back(p[0], p[1]);
  }
  return InfoFlowGraph(n_nodes, edges);
}

Json GraphToJson(const InfoFlowGraph& graph) {
  Json edges = Json::array();
  for (const auto& [m, n] : graph.edges()) edges.push_back({m, n});
  return {{"n_nodes", graph.n_nodes()}, {"edges", edges}};
}

LearningModel ModelFromJson(const Json& j) {
  const std::string kind = GetOr<std::string>(j, "kind", "explicit");
  if (kind == "gaussian") {
    return GaussianLearningModel(Get<int>(j, "states"),
                                 Get<int>(j, "observations"),
                                 Get<int>(j, "actions"));
  }
  if (kind == "binary") {
    const auto prior =
        GetOr<std::vector<double>>(j, "prior", std::vector<double>{0.5, 0.5});
    return BinaryModel(Get<double>(j, "accuracy"), Belief(prior));
  }
  if (kind != "explicit") ParseFail("field 'kind': unknown model '" + kind + "'");
  LearningModel model;
  model.observation = MatrixField(j, "B");
  model.cost = MatrixField(j, "cost");
  model.states = GetOr<int>(j, "states", static_cast<int>(model.observation.rows()));
  model.observations =
      GetOr<int>(j, "observations", static_cast<int>(model.observation.cols()));
  model.actions = GetOr<int>(j, "actions", static_cast<int>(model.cost.cols()));
  if (j.contains("prior")) {
    model.prior = Belief(Get<std::vector<double>>(j, "prior"));
  } else {
    model.prior = Belief::Uniform(static_cast<std::size_t>(model.states));
  }
  model.Validate();
  return model;
}

Json ModelToJson(const LearningModel& model) {
  const auto probs = model.prior.probs();
  return {{"states", model.states},
          {"observations", model.observations},
          {"actions", model.actions},
          {"B", model.observation.ToRows()},
          {"cost", model.cost.ToRows()},
          {"prior", std::vector<double>(probs.begin(), probs.end())}};
}

ExperimentConfig ConfigFromJson(const Json& j) {
  if (!j.is_object()) ParseFail("config must be a JSON object");
  const std::string experiment =
      GetOr<std::string>(j, "experiment", "social_learning");
  if (experiment != "social_learning" && experiment != "polling") {
    ParseFail("field 'experiment': expected social_learning or polling, got '" +
              experiment + "'");
  }
  const bool polling = experiment == "polling";
  const Json& network = Field(j, "network");

  ExperimentConfig config;
  if (network.is_string()) {
    const std::string name = network.get<std::string>();
    config = polling ? DefaultPollingConfig(name)
                     : DefaultSocialLearningConfig(name);
  } else {
    config.kind = polling ? ExperimentKind::kPolling
                          : ExperimentKind::kSocialLearning;
    config.network = "custom";
    config.graph = GraphFromJson(network);
    config.model = polling ? BinaryModel(0.8, Belief({0.4, 0.6}))
                           : GaussianLearningModel(10, 20, 10);
    if (polling) {
      config.recruit_sets = {NodeSet{config.graph->n_nodes()}};
    }
  }
  if (j.contains("model")) config.model = ModelFromJson(j.at("model"));
  config.runs = GetOr<int>(j, "runs", config.runs);
  if (config.runs < 1) ParseFail("field 'runs' must be at least 1");
  config.seed = GetOr<std::uint64_t>(j, "seed", config.seed);
  config.workers = GetOr<int>(j, "workers", config.workers);
  if (config.workers < 1) ParseFail("field 'workers' must be at least 1");
  if (j.contains("estimators")) {
    config.estimators = Get<std::vector<std::string>>(j, "estimators");
  }
  if (j.contains("nodes")) config.nodes = Get<std::vector<int>>(j, "nodes");
  if (j.contains("recruit_sets")) {
    config.recruit_sets = NodeSetsField(j, "recruit_sets");
  }
  if (j.contains("estimate")) {
    const auto estimate = Get<std::string>(j, "estimate");
    if (estimate != "private" && estimate != "public") {
      ParseFail("field 'estimate': expected private or public");
    }
    config.public_estimate = estimate == "public";
  }
  return config;
}

PollConfig PollConfigFromJson(const Json& j) {
  PollConfig config;
  if (j.contains("graph")) {
    config.graph = GraphFromJson(j.at("graph"));
  } else {
    config.graph = GraphFromJson(Field(j, "network"));
  }
  config.model = j.contains("model")
                     ? ModelFromJson(j.at("model"))
                     : BinaryModel(0.8, Belief::Uniform(2));
  config.observations = Get<std::vector<int>>(j, "observations");
  const auto recruits = Get<std::vector<int>>(j, "recruits");
  config.recruits = NodeSet(recruits.begin(), recruits.end());
  if (config.recruits.empty()) ParseFail("field 'recruits' must be nonempty");
  config.pollster = GetOr<int>(j, "pollster", *config.recruits.rbegin());
  config.recruits.insert(config.pollster);
  return config;
}

ChoiceDataset ReadChoiceDatasetCsv(std::istream& in) {
  std::vector<std::string> header;
  const auto rows = ReadNumericCsv(in, header);
  if (header.size() < 3 || (header.size() - 1) % 2 != 0 || header[0] != "t") {
    ParseFail("dataset header must be t,p_1..p_m,a_1..a_m");
  }
  const std::size_t m = (header.size() - 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    if (header[1 + i] != "p_" + std::to_string(i + 1) ||
        header[1 + m + i] != "a_" + std::to_string(i + 1)) {
      ParseFail("dataset header must be t,p_1..p_m,a_1..a_m");
    }
  }
  if (rows.empty()) ParseFail("dataset has no rows");
  Matrix<double> probes(rows.size(), m, 0.0);
  Matrix<double> responses(rows.size(), m, 0.0);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      probes(t, i) = rows[t][1 + i];
      responses(t, i) = rows[t][1 + m + i];
    }
  }
  return ChoiceDataset(std::move(probes), std::move(responses));
}

BeliefSeries ReadBeliefSeriesCsv(std::istream& in) {
  std::vector<std::string> header;
  const auto rows = ReadNumericCsv(in, header);
  if (header != std::vector<std::string>{"t", "pi_1", "a_2"}) {
    ParseFail("belief series header must be t,pi_1,a_2");
  }
  BeliefSeries series;
  for (const auto& row : rows) {
    series.belief.push_back(row[1]);
    series.driver.push_back(row[2]);
  }
  return series;
}

void WriteReportCsv(std::ostream& out, const SimReport& report) {
  out << "node,estimator,mse,runs,seed,recruits\n";
  const auto precision = out.precision(12);
  for (const ReportRow& row : report.rows) {
    out << row.node << ',' << row.estimator << ',' << row.mse << ','
        << report.runs << ',' << report.seed << ',' << row.recruits << '\n';
  }
  out.precision(precision);
}

Json ReportToJson(const SimReport& report) {
  Json rows = Json::array();
  for (const ReportRow& row : report.rows) {
    Json r = {{"node", row.node},
              {"estimator", row.estimator},
              {"mse", row.mse},
              {"runs", report.runs},
              {"seed", report.seed}};
    if (!row.recruits.empty()) r["recruits"] = row.recruits;
    rows.push_back(std::move(r));
  }
  return {{"kind", report.kind},       {"network", report.network},
          {"runs", report.runs},       {"seed", report.seed},
          {"workers", report.workers}, {"rng", report.rng},
          {"wall_seconds", report.wall_seconds}, {"rows", rows}};
}

Json AfriatReportJson(const GarpResult& garp,
                      const std::optional<AfriatCertificate>& certificate,
                      const std::optional<ArFitResult>& ar) {
  Json report = {{"garp", garp.consistent},
                 {"violating_cycle", garp.violating_cycle}};
  if (certificate) {
    report["certificate"] = {{"u", certificate->u},
                             {"lambda", certificate->lambda}};
  } else {
    report["certificate"] = nullptr;
  }
  if (ar) {
    report["b"] = ar->b;
    report["mape"] = std::isnan(ar->mape) ? Json(nullptr) : Json(ar->mape);
  }
  return report;
}

}  // namespace incestfree
