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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qrouter/serialize.hpp"

namespace {

// 0 = done, 1 = bad input, 2 = the checked property does not hold
// (invalid plan, infeasible pair, simulation off its expectation).
constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kCheckFailed = 2;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "qrouter: cannot write " << path << "\n";
    return kBadInput;
  }
  out << text;
  return kOk;
}

std::string dump(const qrouter::ojson& doc) { return doc.dump(2) + "\n"; }

qrouter::AppConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return qrouter::default_config();
  return qrouter::load_config_file(path);
}

bool guard_node_count(int n, int max_nodes) {
  if (n <= max_nodes) return true;
  std::cerr << "qrouter: " << n << " nodes exceeds the --max-nodes guard of "
            << max_nodes << "; raise it if you mean it\n";
  return false;
}

int run_plan(int n, int max_nodes, const std::string& format,
             const std::string& out_path) {
  if (!guard_node_count(n, max_nodes)) return kBadInput;
  const qrouter::WiringPlan plan = qrouter::build_plan(n);
  std::string text;
  if (format == "dot") {
    text = qrouter::plan_to_dot(plan);
    return write_output(text, out_path);
  }
  if (format == "table" || format == "both") {
    text += qrouter::plan_to_table(plan);
  }
  if (format == "json" || format == "both") {
    if (format == "both") text += "\n";
    text += dump(qrouter::plan_to_json(plan));
  }
  return write_output(text, out_path);
}

int run_verify(const std::string& plan_path, const std::string& out_path) {
  const qrouter::WiringPlan plan = qrouter::load_plan_file(plan_path);
  const qrouter::VerificationReport report = qrouter::verify_plan(plan);
  const int rc = write_output(dump(qrouter::verification_to_json(report)),
                              out_path);
  if (rc != kOk) return rc;
  for (const auto& violation : report.violations) {
    std::cerr << qrouter::to_string(violation.kind) << ": "
              << violation.detail << "\n";
  }
  return report.valid ? kOk : kCheckFailed;
}

int run_budget(const std::string& config_path, const std::string& format,
               const std::string& out_path) {
  const qrouter::AppConfig cfg = load_config_or_default(config_path);
  const qrouter::StarNetwork net = qrouter::make_network(cfg);
  const qrouter::NetworkReport report =
      qrouter::network_report(net, cfg.policy);
  const qrouter::Reach reach = qrouter::max_reach_km(net, cfg.policy);
  const std::string text =
      format == "csv"
          ? qrouter::network_report_to_csv(report)
          : dump(qrouter::network_report_to_json(report, reach, cfg.policy));
  const int rc = write_output(text, out_path);
  if (rc != kOk) return rc;
  return report.all_feasible ? kOk : kCheckFailed;
}

struct SimOverrides {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int passes = 0;
  int signal_channel = -1;
  int workers = -1;
  double expected_delivered = -1.0;
  bool has_trials = false;
  bool has_seed = false;
  bool has_passes = false;
  bool has_expected_delivered = false;
};

int run_simulate(const std::string& config_path, const SimOverrides& ov,
                 const std::string& out_path) {
  const qrouter::AppConfig cfg = load_config_or_default(config_path);
  qrouter::SimConfig sim = cfg.sim;
  if (ov.has_trials) sim.trials = ov.trials;
  if (ov.has_seed) sim.seed = ov.seed;
  if (ov.has_passes) sim.passes = ov.passes;
  if (ov.signal_channel >= 0) sim.signal_channel = ov.signal_channel;
  if (ov.workers >= 0) sim.workers = ov.workers;

  qrouter::SimReport report = qrouter::simulate_router_transit(sim);
  if (ov.has_expected_delivered) {
    report.expected.delivered = ov.expected_delivered;
  }
  const qrouter::ComparisonVerdict verdict =
      qrouter::compare_to_analytic(report, sim.sigma_threshold);

  qrouter::ojson doc;
  doc["report"] = qrouter::sim_report_to_json(report);
  doc["comparison"] = qrouter::comparison_to_json(verdict);
  const int rc = write_output(dump(doc), out_path);
  if (rc != kOk) return rc;
  return verdict.pass ? kOk : kCheckFailed;
}

int run_export_dot(int n, int max_nodes, const std::string& plan_path,
                   const std::string& out_path) {
  if (n > 0 && !plan_path.empty()) {
    std::cerr << "qrouter: give either a node count or --plan, not both\n";
    return kBadInput;
  }
  if (n <= 0 && plan_path.empty()) {
    std::cerr << "qrouter: give a node count or --plan\n";
    return kBadInput;
  }
  if (!plan_path.empty()) {
    return write_output(qrouter::plan_to_dot(qrouter::load_plan_file(plan_path)),
                        out_path);
  }
  if (!guard_node_count(n, max_nodes)) return kBadInput;
  return write_output(qrouter::plan_to_dot(qrouter::build_plan(n)), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planner and analyzer for wavelength-routed star networks"};
  app.set_version_flag("--version", "qrouter 0.1.0");
  app.require_subcommand(1);

  int plan_n = 0;
  int max_nodes = 4200;
  std::string plan_format = "json";
  std::string out_path;
  auto* plan_cmd =
      app.add_subcommand("plan", "Build the canonical wiring table");
  plan_cmd->add_option("n", plan_n, "number of user nodes")->required();
  plan_cmd->add_option("--format", plan_format, "output form")
      ->check(CLI::IsMember({"json", "table", "dot", "both"}))
      ->capture_default_str();
  plan_cmd->add_option("--max-nodes", max_nodes, "size guard")
      ->capture_default_str();
  plan_cmd->add_option("-o,--output", out_path, "write here instead of stdout");

  std::string verify_path;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a wiring table's invariants");
  verify_cmd->add_option("plan", verify_path, "plan JSON file")->required();
  verify_cmd->add_option("-o,--output", out_path,
                         "write the report here instead of stdout");

  std::string config_path;
  std::string budget_format = "json";
  auto* budget_cmd = app.add_subcommand(
      "budget", "Per-pair link budgets, crosstalk and reach");
  budget_cmd->add_option("--config", config_path, "config JSON file");
  budget_cmd->add_option("--format", budget_format, "output form")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  budget_cmd->add_option("-o,--output", out_path,
                         "write here instead of stdout");

  SimOverrides ov;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo photon transits checked against the "
                  "closed-form expectation");
  sim_cmd->add_option("--config", config_path, "config JSON file");
  auto* trials_opt = sim_cmd->add_option("--trials", ov.trials, "photon count");
  auto* seed_opt = sim_cmd->add_option("--seed", ov.seed, "RNG seed");
  auto* passes_opt =
      sim_cmd->add_option("--passes", ov.passes, "MUX passes per transit");
  sim_cmd->add_option("--signal-channel", ov.signal_channel,
                      "1-based channel (0 = mid-band)");
  sim_cmd->add_option("--workers", ov.workers,
                      "worker threads (0 = hardware)");
  auto* override_opt = sim_cmd->add_option("--override-expected-delivered",
                                           ov.expected_delivered, "");
  override_opt->group("");  // test hook, hidden from help
  sim_cmd->add_option("-o,--output", out_path,
                      "write here instead of stdout");

  int dot_n = 0;
  std::string dot_plan_path;
  auto* dot_cmd =
      app.add_subcommand("export-dot", "Graphviz rendering of a plan");
  dot_cmd->add_option("n", dot_n, "number of user nodes");
  dot_cmd->add_option("--plan", dot_plan_path, "plan JSON file");
  dot_cmd->add_option("--max-nodes", max_nodes, "size guard")
      ->capture_default_str();
  dot_cmd->add_option("-o,--output", out_path, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kBadInput;
  }

  ov.has_trials = trials_opt->count() > 0;
  ov.has_seed = seed_opt->count() > 0;
  ov.has_passes = passes_opt->count() > 0;
  ov.has_expected_delivered = override_opt->count() > 0;

  try {
    if (plan_cmd->parsed()) {
      return run_plan(plan_n, max_nodes, plan_format, out_path);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_path, out_path);
    }
    if (budget_cmd->parsed()) {
      return run_budget(config_path, budget_format, out_path);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(config_path, ov, out_path);
    }
    if (dot_cmd->parsed()) {
      return run_export_dot(dot_n, max_nodes, dot_plan_path, out_path);
    }
  } catch (const qrouter::ConfigError& err) {
    std::cerr << "qrouter: " << err.what() << "\n";
    return kBadInput;
  } catch (const std::exception& err) {
    std::cerr << "qrouter: " << err.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
