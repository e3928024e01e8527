// Copyright 2026 The qrouter Authors
//
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

// Python surface of the library. Node and wavelength ids cross the
// boundary as plain ints; structured results come back as small classes
// with read-only fields, and JSON documents as text.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrouter/network.hpp"
#include "qrouter/philox.hpp"
#include "qrouter/photonics.hpp"
#include "qrouter/serialize.hpp"
#include "qrouter/transport.hpp"
#include "qrouter/wiring.hpp"

namespace py = pybind11;
using namespace qrouter;

namespace {

std::string violation_kind(const Violation& violation) {
  return to_string(violation.kind);
}

std::vector<int> violation_nodes(const Violation& violation) {
  std::vector<int> indices;
  indices.reserve(violation.nodes.size());
  for (NodeId node : violation.nodes) indices.push_back(node.index);
  return indices;
}

}  // namespace

PYBIND11_MODULE(_qrouter, m) {
  m.doc() =
      "Planner and analyzer for wavelength-routed star networks: wiring "
      "tables, dB budgets, crosstalk sums, and seeded transit simulation.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnphysicalSpecError>(m, "UnphysicalSpecError",
                                              PyExc_ValueError);

  // --- wiring -------------------------------------------------------------

  m.def("node_label", [](int index) { return node_label(NodeId{index}); },
        py::arg("index"), "Spreadsheet-style letter label of a node index.");
  m.def(
      "node_from_label",
      [](const std::string& label) -> std::optional<int> {
        const auto node = node_from_label(label);
        if (!node.has_value()) return std::nullopt;
        return node->index;
      },
      py::arg("label"), "Inverse of node_label; None for malformed labels.");
  m.def("expected_color_count", &expected_color_count, py::arg("n"),
        "Wavelengths an n-node plan takes: n-1 when n is even, else n.");
  m.def("demux_port_count", &demux_port_count, py::arg("n"),
        "Demultiplexing ports per MUX for an n-node plan.");

  py::class_<Violation>(m, "Violation")
      .def_property_readonly("kind", &violation_kind)
      .def_property_readonly("nodes", &violation_nodes)
      .def_readonly("detail", &Violation::detail)
      .def("__repr__", [](const Violation& v) {
        return "<Violation " + to_string(v.kind) + ": " + v.detail + ">";
      });

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("valid", &VerificationReport::valid)
      .def_readonly("violations", &VerificationReport::violations)
      .def("to_json",
           [](const VerificationReport& report) {
             return verification_to_json(report).dump(2) + "\n";
           })
      .def("__bool__",
           [](const VerificationReport& report) { return report.valid; })
      .def("__repr__", [](const VerificationReport& report) {
        return report.valid ? std::string("<VerificationReport valid>")
                            : "<VerificationReport " +
                                  std::to_string(report.violations.size()) +
                                  " violation(s)>";
      });

  py::class_<WiringPlan>(m, "WiringPlan")
      .def(py::init<int, int>(), py::arg("n_nodes"), py::arg("color_count"))
      .def_property_readonly("node_count", &WiringPlan::node_count)
      .def_property_readonly("color_count", &WiringPlan::color_count)
      .def(
          "has",
          [](const WiringPlan& plan, int u, int v) {
            return plan.has(NodeId{u}, NodeId{v});
          },
          py::arg("u"), py::arg("v"))
      .def(
          "wavelength",
          [](const WiringPlan& plan, int u, int v) {
            return plan.wavelength(NodeId{u}, NodeId{v}).channel;
          },
          py::arg("u"), py::arg("v"),
          "Wavelength of the u<->v link (1-based).")
      .def(
          "assign",
          [](WiringPlan& plan, int u, int v, int w) {
            plan.assign(NodeId{u}, NodeId{v}, WavelengthId{w});
          },
          py::arg("u"), py::arg("v"), py::arg("w"))
      .def(
          "assign_one_way",
          [](WiringPlan& plan, int u, int v, int w) {
            plan.assign_one_way(NodeId{u}, NodeId{v}, WavelengthId{w});
          },
          py::arg("u"), py::arg("v"), py::arg("w"))
      .def(
          "raw_cell",
          [](const WiringPlan& plan, int u, int v) {
            return plan.raw_cell(NodeId{u}, NodeId{v});
          },
          py::arg("u"), py::arg("v"), "Raw table cell, 0 = unassigned.")
      .def(
          "route",
          [](const WiringPlan& plan, int ingress, int w) -> std::optional<int> {
            const auto egress = route(plan, NodeId{ingress}, WavelengthId{w});
            if (!egress.has_value()) return std::nullopt;
            return egress->index;
          },
          py::arg("ingress"), py::arg("wavelength"),
          "Egress node for light entering at `ingress` on `wavelength`, or "
          "None when that wavelength idles there.")
      .def("to_json",
           [](const WiringPlan& plan) { return plan_to_json(plan).dump(2) + "\n"; })
      .def("to_table", [](const WiringPlan& plan) { return plan_to_table(plan); })
      .def("to_dot", [](const WiringPlan& plan) { return plan_to_dot(plan); })
      .def("__repr__", [](const WiringPlan& plan) {
        return "<WiringPlan n=" + std::to_string(plan.node_count()) +
               " colors=" + std::to_string(plan.color_count()) + ">";
      });

  m.def("build_plan", &build_plan, py::arg("n"),
        "Canonical n-node wiring plan with the minimal wavelength count.");
  m.def("verify_plan", &verify_plan, py::arg("plan"),
        "Checks symmetry, coverage, per-vertex distinctness, and the color "
        "count; returns a report, never throws on bad tables.");
  m.def("parse_plan", &parse_plan, py::arg("text"),
        py::arg("origin") = "<plan>",
        "Parses a plan document (compact upper triangle or full matrix).");
  m.def("load_plan_file", &load_plan_file, py::arg("path"));

  // --- photonics ----------------------------------------------------------

  py::class_<MuxSpec>(m, "MuxSpec")
      .def(py::init<>())
      .def_readwrite("channel_count", &MuxSpec::channel_count)
      .def_readwrite("insertion_loss_db", &MuxSpec::insertion_loss_db)
      .def_readwrite("adjacent_crosstalk_db", &MuxSpec::adjacent_crosstalk_db)
      .def_readwrite("nonadjacent_crosstalk_db",
                     &MuxSpec::nonadjacent_crosstalk_db)
      .def_readwrite("crosstalk_matrix_db", &MuxSpec::crosstalk_matrix_db)
      .def("has_matrix", &MuxSpec::has_matrix)
      .def("crosstalk_db", &MuxSpec::crosstalk_db, py::arg("signal_channel"),
           py::arg("interferer"))
      .def("validate", &MuxSpec::validate)
      .def("to_json",
           [](const MuxSpec& spec) { return mux_to_json(spec).dump(2) + "\n"; })
      .def("__repr__", [](const MuxSpec& spec) {
        return "<MuxSpec channels=" + std::to_string(spec.channel_count) +
               " il=" + std::to_string(spec.insertion_loss_db) + "dB>";
      });

  m.def("mid_band_channel", &mid_band_channel, py::arg("channel_count"));
  m.def(
      "db_to_ratio", [](double db) { return db_to_ratio(db).value; },
      py::arg("db"), "10^(-db/10).");
  m.def(
      "leak_ratio_per_pass",
      [](const MuxSpec& spec, int offset) {
        return leak_ratio_per_pass(spec, offset).value;
      },
      py::arg("spec"), py::arg("offset"),
      "Per-pass probability of leaking to the port `offset` channels away.");
  m.def("router_insertion_loss_db", &router_insertion_loss_db,
        py::arg("spec"), "Loss of a full transit: twice the MUX loss.");
  m.def("two_pass_crosstalk_ratio", &two_pass_crosstalk_ratio,
        py::arg("spec"), py::arg("offset"),
        "Leak-to-signal ratio after both passes; insertion loss cancels.");

  py::class_<CrosstalkAssessment>(m, "CrosstalkAssessment")
      .def_readonly("signal_channel", &CrosstalkAssessment::signal_channel)
      .def_readonly("pre_router_loss_db",
                    &CrosstalkAssessment::pre_router_loss_db)
      .def_readonly("interferer_count", &CrosstalkAssessment::interferer_count)
      .def_readonly("per_channel_ratio",
                    &CrosstalkAssessment::per_channel_ratio)
      .def_readonly("worst_case_sum", &CrosstalkAssessment::worst_case_sum)
      .def_readonly("truncated_sum", &CrosstalkAssessment::truncated_sum)
      .def("__repr__", [](const CrosstalkAssessment& a) {
        return "<CrosstalkAssessment channel=" +
               std::to_string(a.signal_channel) +
               " worst_case_sum=" + std::to_string(a.worst_case_sum) + ">";
      });

  m.def("worst_case_crosstalk_sum", &worst_case_crosstalk_sum,
        py::arg("spec"), py::arg("pre_router_loss_db"),
        py::arg("signal_channel"),
        "Aggregate crosstalk with every interferer entering the router "
        "clean while the signal carries the sender-side fiber loss.");

  // --- transport ----------------------------------------------------------

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("trials", &SimConfig::trials)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("spec", &SimConfig::spec)
      .def_readwrite("passes", &SimConfig::passes)
      .def_readwrite("signal_channel", &SimConfig::signal_channel)
      .def_readwrite("workers", &SimConfig::workers)
      .def_readwrite("sigma_threshold", &SimConfig::sigma_threshold)
      .def("resolved_signal_channel", &SimConfig::resolved_signal_channel);

  py::class_<Tallies>(m, "Tallies")
      .def_readonly("trials", &Tallies::trials)
      .def_readonly("delivered", &Tallies::delivered)
      .def_readonly("clean_delivered", &Tallies::clean_delivered)
      .def_readonly("lost", &Tallies::lost)
      .def_readonly("leaked", &Tallies::leaked)
      .def_readonly("repeated_leak", &Tallies::repeated_leak)
      .def("leaked_total", &Tallies::leaked_total);

  py::class_<TransitExpectation>(m, "TransitExpectation")
      .def_readonly("delivered", &TransitExpectation::delivered)
      .def_readonly("lost", &TransitExpectation::lost)
      .def_readonly("leaked", &TransitExpectation::leaked)
      .def_readonly("clean_delivered", &TransitExpectation::clean_delivered)
      .def_readonly("repeated_leak", &TransitExpectation::repeated_leak);

  py::class_<SimReport>(m, "SimReport")
      .def_readonly("generator", &SimReport::generator)
      .def_readonly("seed", &SimReport::seed)
      .def_readonly("trials", &SimReport::trials)
      .def_readonly("passes", &SimReport::passes)
      .def_readonly("signal_channel", &SimReport::signal_channel)
      .def_readonly("spec", &SimReport::spec)
      .def_readonly("tallies", &SimReport::tallies)
      .def_readonly("expected", &SimReport::expected)
      .def("to_json", [](const SimReport& report) {
        return sim_report_to_json(report).dump(2) + "\n";
      });

  py::class_<TallyZ>(m, "TallyZ")
      .def_readonly("name", &TallyZ::name)
      .def_readonly("observed", &TallyZ::observed)
      .def_readonly("expected", &TallyZ::expected)
      .def_readonly("z", &TallyZ::z);

  py::class_<ComparisonVerdict>(m, "ComparisonVerdict")
      .def_readonly("threshold_sigma", &ComparisonVerdict::threshold_sigma)
      .def_readonly("pass_", &ComparisonVerdict::pass)
      .def_readonly("scores", &ComparisonVerdict::scores)
      .def("to_json",
           [](const ComparisonVerdict& verdict) {
             return comparison_to_json(verdict).dump(2) + "\n";
           })
      .def("__bool__",
           [](const ComparisonVerdict& verdict) { return verdict.pass; });

  m.def("simulate_router_transit", &simulate_router_transit,
        py::arg("config"),
        "Runs seeded photon transits; the report depends only on the "
        "config, never on the worker fan-out.",
        py::call_guard<py::gil_scoped_release>());
  m.def("run_trials", &run_trials, py::arg("config"), py::arg("first"),
        py::arg("last"),
        "Tallies for trial indices [first, last); disjoint ranges merge to "
        "the exact single-range result.",
        py::call_guard<py::gil_scoped_release>());
  m.def("merge_tallies", &merge_tallies, py::arg("a"), py::arg("b"));
  m.def("exact_transit", &exact_transit, py::arg("spec"), py::arg("passes"),
        py::arg("signal_channel"),
        "Exact terminal-state distribution (zero-variance weighted tally).");
  m.def("compare_to_analytic", &compare_to_analytic, py::arg("report"),
        py::arg("threshold_sigma") = 4.0,
        "Z-scores every tally against the exact expectation.");
  m.attr("GENERATOR_ID") = std::string(PhiloxStream::kGeneratorId);

  // --- network ------------------------------------------------------------

  py::class_<UserPort>(m, "UserPort")
      .def(py::init([](int node, double arterial_length_km) {
             return UserPort{NodeId{node}, arterial_length_km};
           }),
           py::arg("node"), py::arg("arterial_length_km"))
      .def_property_readonly(
          "node", [](const UserPort& port) { return port.node.index; })
      .def_readwrite("arterial_length_km", &UserPort::arterial_length_km)
      .def("__repr__", [](const UserPort& port) {
        return "<UserPort " + node_label(port.node) + " " +
               std::to_string(port.arterial_length_km) + "km>";
      });

  py::class_<StarNetwork>(m, "StarNetwork")
      .def(py::init([](const WiringPlan& plan, const MuxSpec& mux,
                       const std::vector<UserPort>& users,
                       double fiber_attenuation_db_per_km) {
             return StarNetwork{plan, mux, users, fiber_attenuation_db_per_km};
           }),
           py::arg("plan"), py::arg("mux"), py::arg("users"),
           py::arg("fiber_attenuation_db_per_km") = 0.2)
      .def_readwrite("plan", &StarNetwork::plan)
      .def_readwrite("mux", &StarNetwork::mux)
      .def_readwrite("users", &StarNetwork::users)
      .def_readwrite("fiber_attenuation_db_per_km",
                     &StarNetwork::fiber_attenuation_db_per_km)
      .def(
          "arterial_length_km",
          [](const StarNetwork& net, int node) {
            return net.arterial_length_km(NodeId{node});
          },
          py::arg("node"))
      .def(
          "arterial_loss_db",
          [](const StarNetwork& net, int node) {
            return net.arterial_loss_db(NodeId{node});
          },
          py::arg("node"));

  m.def("validate_network", &validate_network, py::arg("net"));

  py::class_<FeasibilityPolicy>(m, "FeasibilityPolicy")
      .def(py::init([](double max_loss_budget_db, double max_crosstalk_ratio) {
             return FeasibilityPolicy{max_loss_budget_db, max_crosstalk_ratio};
           }),
           py::arg("max_loss_budget_db") = 20.0,
           py::arg("max_crosstalk_ratio") = 1.0e-3)
      .def_readwrite("max_loss_budget_db",
                     &FeasibilityPolicy::max_loss_budget_db)
      .def_readwrite("max_crosstalk_ratio",
                     &FeasibilityPolicy::max_crosstalk_ratio);

  py::class_<LinkBudget>(m, "LinkBudget")
      .def_property_readonly(
          "sender", [](const LinkBudget& b) { return b.sender.index; })
      .def_property_readonly(
          "receiver", [](const LinkBudget& b) { return b.receiver.index; })
      .def_property_readonly(
          "wavelength", [](const LinkBudget& b) { return b.wavelength.channel; })
      .def_readonly("sender_fiber_db", &LinkBudget::sender_fiber_db)
      .def_readonly("router_db", &LinkBudget::router_db)
      .def_readonly("receiver_fiber_db", &LinkBudget::receiver_fiber_db)
      .def_readonly("total_loss_db", &LinkBudget::total_loss_db)
      .def_readonly("crosstalk", &LinkBudget::crosstalk)
      .def_readonly("loss_ok", &LinkBudget::loss_ok)
      .def_readonly("crosstalk_ok", &LinkBudget::crosstalk_ok)
      .def_readonly("feasible", &LinkBudget::feasible)
      .def("__repr__", [](const LinkBudget& b) {
        return "<LinkBudget " + node_label(b.sender) + "->" +
               node_label(b.receiver) + " " +
               std::to_string(b.total_loss_db) + "dB " +
               (b.feasible ? "feasible" : "infeasible") + ">";
      });

  m.def(
      "link_budget",
      [](const StarNetwork& net, int u, int v,
         const FeasibilityPolicy& policy) {
        return link_budget(net, NodeId{u}, NodeId{v}, policy);
      },
      py::arg("net"), py::arg("u"), py::arg("v"),
      py::arg("policy") = FeasibilityPolicy{},
      "End-to-end budget for the ordered pair u -> v.");

  py::class_<Reach>(m, "Reach")
      .def_readonly("unbounded", &Reach::unbounded)
      .def_readonly("per_arm_km", &Reach::per_arm_km)
      .def_readonly("end_to_end_km", &Reach::end_to_end_km);

  m.def("max_reach_km", &max_reach_km, py::arg("net"),
        py::arg("policy") = FeasibilityPolicy{},
        "Longest symmetric arm the loss budget allows.");

  py::class_<NetworkReport>(m, "NetworkReport")
      .def_readonly("pairs", &NetworkReport::pairs)
      .def_readonly("pair_count", &NetworkReport::pair_count)
      .def_readonly("feasible_count", &NetworkReport::feasible_count)
      .def_readonly("all_feasible", &NetworkReport::all_feasible)
      .def(
          "to_json",
          [](const NetworkReport& report, const Reach& reach,
             const FeasibilityPolicy& policy) {
            return network_report_to_json(report, reach, policy).dump(2) +
                   "\n";
          },
          py::arg("reach"), py::arg("policy") = FeasibilityPolicy{})
      .def("to_csv", [](const NetworkReport& report) {
        return network_report_to_csv(report);
      });

  m.def("network_report", &network_report, py::arg("net"),
        py::arg("policy") = FeasibilityPolicy{},
        "One budget per unordered pair, lossiest sender side, sorted worst "
        "first.");

  // --- config -------------------------------------------------------------

  py::class_<AppConfig>(m, "AppConfig")
      .def(py::init(&default_config))
      .def_readwrite("mux", &AppConfig::mux)
      .def_readwrite("fiber_attenuation_db_per_km",
                     &AppConfig::fiber_attenuation_db_per_km)
      .def_readwrite("users", &AppConfig::users)
      .def_readwrite("policy", &AppConfig::policy)
      .def_readwrite("sim", &AppConfig::sim);

  m.def("default_config", &default_config,
        "Built-in defaults: a 40-channel MUX star with 25 km arms.");
  m.def("parse_config", &parse_config, py::arg("text"),
        py::arg("origin") = "<config>",
        "Parses and validates config text; unknown keys are rejected.");
  m.def("load_config_file", &load_config_file, py::arg("path"));
  m.def("make_network", &make_network, py::arg("config"),
        "Star described by the config: canonical plan, configured MUX, one "
        "arterial fiber per user.");
}
