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

// JSON and CSV adapters used by the command line tool and the Python
// module. Malformed input raises kParse with the offending field or line.

#ifndef INCESTFREE_IO_HPP_
#define INCESTFREE_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "incestfree/belief.hpp"
#include "incestfree/graph.hpp"
#include "incestfree/harness.hpp"
#include "incestfree/revealed_prefs.hpp"

namespace incestfree {

using Json = nlohmann::json;

Json ReadJsonFile(const std::string& path);
Json ParseJson(const std::string& text);

// {"n_nodes": N, "edges": [[m, n], ...]}, a network name string, or
// {"network": name}.
InfoFlowGraph GraphFromJson(const Json& j);
Json GraphToJson(const InfoFlowGraph& graph);

// {"kind": "gaussian", "states", "observations", "actions"},
// {"kind": "binary", "accuracy", "prior"} or the explicit form
// {"states", "observations", "actions", "B", "cost", "prior"}.
LearningModel ModelFromJson(const Json& j);
Json ModelToJson(const LearningModel& model);

// {"experiment": "social_learning" | "polling", "network": name or graph,
//  "model", "runs", "seed", "workers", "estimators", "nodes",
//  "recruit_sets"}. Unset fields take the defaults of the named network.
ExperimentConfig ConfigFromJson(const Json& j);

// A single poll: graph, model, per-node observations, recruits and the
// pollster (defaults to the largest recruit).
struct PollConfig {
  InfoFlowGraph graph{1, {}};
  LearningModel model;
  std::vector<int> observations;
  NodeSet recruits;
  NodeId pollster = 0;
};
PollConfig PollConfigFromJson(const Json& j);

// Header t,p_1..p_m,a_1..a_m.
ChoiceDataset ReadChoiceDatasetCsv(std::istream& in);

// Header t,pi_1,a_2.
struct BeliefSeries {
  std::vector<double> belief;
  std::vector<double> driver;
};
BeliefSeries ReadBeliefSeriesCsv(std::istream& in);

// Columns node,estimator,mse,runs,seed,recruits.
void WriteReportCsv(std::ostream& out, const SimReport& report);
Json ReportToJson(const SimReport& report);

Json AfriatReportJson(const GarpResult& garp,
                      const std::optional<AfriatCertificate>& certificate,
                      const std::optional<ArFitResult>& ar = std::nullopt);

}  // namespace incestfree

#endif  // INCESTFREE_IO_HPP_
