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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incestfree/errors.hpp"
#include "incestfree/graph.hpp"
#include "incestfree/harness.hpp"
#include "incestfree/incest_removal.hpp"
#include "incestfree/io.hpp"
#include "incestfree/polling.hpp"
#include "incestfree/revealed_prefs.hpp"

namespace py = pybind11;
using namespace incestfree;

namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<double> ToVector(const Belief& b) {
  return {b.probs().begin(), b.probs().end()};
}

LearningModel ExplicitModel(const Rows& B, const Rows& cost,
                            const std::vector<double>& prior) {
  LearningModel m;
  m.observation = Matrix<double>::FromRows(B);
  m.cost = Matrix<double>::FromRows(cost);
  m.states = static_cast<int>(m.observation.rows());
  m.observations = static_cast<int>(m.observation.cols());
  m.actions = static_cast<int>(m.cost.cols());
  m.prior = Belief(prior);
  m.Validate();
  return m;
}

ChoiceDataset Dataset(const Rows& probes, const Rows& responses) {
  return ChoiceDataset(Matrix<double>::FromRows(probes),
                       Matrix<double>::FromRows(responses));
}

py::dict TraceToDict(const ProtocolTrace& trace) {
  std::vector<int> actions;
  std::vector<std::vector<double>> fused, priv, pub;
  for (const NodeRecord& r : trace.nodes) {
    actions.push_back(r.action);
    fused.push_back(ToVector(r.fused_prior));
    priv.push_back(ToVector(r.private_belief));
    pub.push_back(ToVector(r.public_belief));
  }
  py::dict d;
  d["mode"] = std::string(FusionModeName(trace.mode));
  d["actions"] = actions;
  d["fused_prior"] = fused;
  d["private_belief"] = priv;
  d["public_belief"] = pub;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Incest-free social learning and expectation polling";

  static py::exception<Error> error(m, "IncestfreeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error)(e.what());
      instance.attr("kind") = ErrorKindName(e.kind());
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<InfoFlowGraph>(m, "InfoFlowGraph")
      .def(py::init([](int n_nodes, const std::vector<Edge>& edges) {
             return InfoFlowGraph(n_nodes, edges);
           }),
           py::arg("n_nodes"), py::arg("edges"))
      .def_static("named", &BuildNamedNetwork, py::arg("name"))
      .def_property_readonly("n_nodes", &InfoFlowGraph::n_nodes)
      .def_property_readonly("edges", &InfoFlowGraph::edges)
      .def("adjacency", [](const InfoFlowGraph& g) { return g.adjacency().ToRows(); })
      .def("closure", [](const InfoFlowGraph& g) { return g.closure().ToRows(); })
      .def("one_hop", &InfoFlowGraph::OneHop, py::arg("node"))
      .def("multi_hop", &InfoFlowGraph::MultiHop, py::arg("node"))
      .def("weights", &InfoFlowGraph::Weights, py::arg("node"))
      .def("is_achievable", &InfoFlowGraph::IsAchievable, py::arg("node"))
      .def("all_achievable", &InfoFlowGraph::AllAchievable)
      .def("incest_nodes", &InfoFlowGraph::IncestNodes);

  m.def("minimal_extra_nodes", &MinimalExtraNodes, py::arg("graph"),
        py::arg("recruits"));

  py::class_<LearningModel>(m, "LearningModel")
      .def(py::init(&ExplicitModel), py::arg("B"), py::arg("cost"), py::arg("prior"))
      .def_static("gaussian", &GaussianLearningModel, py::arg("states"),
                  py::arg("observations"), py::arg("actions"))
      .def_static("binary",
                  [](double accuracy, const std::vector<double>& prior) {
                    return BinaryModel(accuracy, Belief(prior));
                  },
                  py::arg("accuracy"), py::arg("prior") = std::vector<double>{0.5, 0.5})
      .def_readonly("states", &LearningModel::states)
      .def_readonly("observations", &LearningModel::observations)
      .def_readonly("actions", &LearningModel::actions)
      .def_property_readonly("B", [](const LearningModel& lm) { return lm.observation.ToRows(); })
      .def_property_readonly("cost", [](const LearningModel& lm) { return lm.cost.ToRows(); })
      .def_property_readonly("prior", [](const LearningModel& lm) { return ToVector(lm.prior); });

  m.def("run_protocol1",
        [](const InfoFlowGraph& g, const LearningModel& lm,
           const std::vector<int>& y, const std::string& mode) {
          return TraceToDict(RunProtocol1(g, lm, y, ParseFusionMode(mode)));
        },
        py::arg("graph"), py::arg("model"), py::arg("observations"),
        py::arg("mode") = "fair");

  m.def("run_protocol2",
        [](const InfoFlowGraph& g, const LearningModel& lm, const std::vector<int>& y) {
          std::vector<std::vector<double>> out;
          for (const Belief& b : RunProtocol2(g, lm, y)) out.push_back(ToVector(b));
          return out;
        },
        py::arg("graph"), py::arg("model"), py::arg("observations"));

  m.def("posterior_from_incestious",
        [](const InfoFlowGraph& g, const LearningModel& lm, const NodeSet& recruits,
           const Rows& beliefs) {
          std::vector<Belief> given;
          for (const auto& b : beliefs) given.emplace_back(b);
          return ToVector(PosteriorFromIncestious(g, lm, recruits, given));
        },
        py::arg("graph"), py::arg("model"), py::arg("recruits"), py::arg("beliefs"));

  m.def("extreme_example", []() {
    const ExtremeExampleResult r = RunExtremeExample();
    py::dict d;
    d["naive"] = r.naive;
    d["exact"] = r.exact;
    d["incestious_posterior"] = r.incestious;
    return d;
  });

  m.def("run_experiment",
        [](const std::string& config_json) {
          const SimReport report = RunExperiment(ConfigFromJson(ParseJson(config_json)));
          return ReportToJson(report).dump();
        },
        py::arg("config_json"),
        "Runs a Monte Carlo experiment described by a JSON config and returns "
        "the report as JSON text.");

  m.def("garp_check",
        [](const Rows& probes, const Rows& responses) {
          const GarpResult g = GarpCheck(Dataset(probes, responses));
          return py::make_tuple(g.consistent, g.violating_cycle);
        },
        py::arg("probes"), py::arg("responses"));

  m.def("afriat_solve",
        [](const Rows& probes, const Rows& responses) -> py::object {
          const auto cert = AfriatSolve(Dataset(probes, responses));
          if (!cert) return py::none();
          return py::make_tuple(cert->u, cert->lambda);
        },
        py::arg("probes"), py::arg("responses"));

  m.def("ar_fit",
        [](const std::vector<double>& belief, const std::vector<double>& driver) {
          const ArFitResult r = ArFit(belief, driver);
          py::dict d;
          d["b"] = r.b;
          d["residuals"] = r.residuals;
          d["mape"] = r.mape;
          return d;
        },
        py::arg("belief"), py::arg("driver"));
}
