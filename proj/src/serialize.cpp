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

#include "qrouter/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qrouter {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::string& origin, const std::string& where,
                          const std::string& reason) {
  throw ConfigError(origin + ": " + where + ": " + reason);
}

void expect_object(const json& node, const std::string& origin,
                   const std::string& where) {
  if (!node.is_object()) fail_at(origin, where, "must be an object");
}

void reject_unknown(const json& node,
                    std::initializer_list<const char*> allowed,
                    const std::string& origin, const std::string& where) {
  for (const auto& item : node.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* key) { return item.key() == key; });
    if (!known) fail_at(origin, where + "/" + item.key(), "unknown key");
  }
}

double require_number(const json& value, const std::string& origin,
                      const std::string& where) {
  if (!value.is_number()) fail_at(origin, where, "must be a number");
  return value.get<double>();
}

int require_int(const json& value, const std::string& origin,
                const std::string& where) {
  if (!value.is_number_integer()) fail_at(origin, where, "must be an integer");
  const auto wide = value.get<std::int64_t>();
  if (wide < INT32_MIN || wide > INT32_MAX) {
    fail_at(origin, where, "out of range");
  }
  return static_cast<int>(wide);
}

std::uint64_t require_uint(const json& value, const std::string& origin,
                           const std::string& where) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  fail_at(origin, where, "must be a non-negative integer");
}

// Shortest round-trip decimal form, the same spelling json output uses.
std::string number_text(double v) { return json(v).dump(); }

std::string offset_key(int offset) {
  return (offset > 0 ? "+" : "") + std::to_string(offset);
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  const std::size_t pos = std::min(byte == 0 ? 0 : byte - 1, text.size());
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void rethrow_parse_error(const json::parse_error& err,
                                      const std::string& text,
                                      const std::string& origin) {
  const auto [line, col] = line_col(text, err.byte);
  std::string reason = err.what();
  if (const auto bracket = reason.find("] "); bracket != std::string::npos) {
    reason = reason.substr(bracket + 2);
  }
  if (const auto colon = reason.find(": "); colon != std::string::npos &&
                                            reason.rfind("parse error", 0) == 0) {
    reason = reason.substr(colon + 2);
  }
  throw ConfigError(origin + ":" + std::to_string(line) + ":" +
                    std::to_string(col) + ": " + reason);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot read file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ojson tally_to_json(std::uint64_t count, std::uint64_t trials) {
  const TallyStat stat = tally_stat(count, trials);
  ojson out;
  out["count"] = stat.count;
  out["fraction"] = stat.fraction;
  out["std_error"] = stat.std_error;
  return out;
}

}  // namespace

ojson plan_to_json(const WiringPlan& plan) {
  ojson doc;
  const int n = plan.node_count();
  doc["n"] = n;
  doc["colors"] = plan.color_count();
  ojson table = ojson::array();
  for (int u = 0; u + 1 < n; ++u) {
    ojson row = ojson::array();
    for (int v = u + 1; v < n; ++v) {
      const int cell = plan.raw_cell(NodeId{u}, NodeId{v});
      if (cell == 0) {
        row.push_back(nullptr);
      } else {
        row.push_back(cell);
      }
    }
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  return doc;
}

WiringPlan plan_from_json(const nlohmann::json& doc,
                          const std::string& origin) {
  expect_object(doc, origin, "/");
  reject_unknown(doc, {"n", "colors", "table"}, origin, "");
  const auto n_it = doc.find("n");
  if (n_it == doc.end()) fail_at(origin, "/n", "required");
  const int n = require_int(*n_it, origin, "/n");
  if (n < 2) fail_at(origin, "/n", "a plan needs at least 2 nodes");

  int colors = expected_color_count(n);
  if (const auto it = doc.find("colors"); it != doc.end()) {
    colors = require_int(*it, origin, "/colors");
    if (colors < 1) fail_at(origin, "/colors", "must be positive");
  }

  const auto table_it = doc.find("table");
  if (table_it == doc.end()) fail_at(origin, "/table", "required");
  const json& table = *table_it;
  if (!table.is_array()) fail_at(origin, "/table", "must be an array");

  WiringPlan plan(n, colors);
  const auto read_cell = [&](const json& cell, const std::string& where) {
    if (cell.is_null()) return 0;
    const int w = require_int(cell, origin, where);
    if (w < 1) fail_at(origin, where, "wavelength channels are 1-based");
    return w;
  };

  if (static_cast<int>(table.size()) == n - 1) {
    for (int u = 0; u + 1 < n; ++u) {
      const json& row = table[u];
      const std::string row_path = "/table/" + std::to_string(u);
      if (!row.is_array() || static_cast<int>(row.size()) != n - 1 - u) {
        fail_at(origin, row_path,
                "row must list the " + std::to_string(n - 1 - u) +
                    " cells right of the diagonal");
      }
      for (int k = 0; k < static_cast<int>(row.size()); ++k) {
        const int v = u + 1 + k;
        const int w =
            read_cell(row[k], row_path + "/" + std::to_string(k));
        if (w != 0) plan.assign(NodeId{u}, NodeId{v}, WavelengthId{w});
      }
    }
    return plan;
  }

  if (static_cast<int>(table.size()) == n) {
    for (int u = 0; u < n; ++u) {
      const json& row = table[u];
      const std::string row_path = "/table/" + std::to_string(u);
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        fail_at(origin, row_path,
                "row must list all " + std::to_string(n) + " cells");
      }
      for (int v = 0; v < n; ++v) {
        const std::string cell_path = row_path + "/" + std::to_string(v);
        if (u == v) {
          if (!row[v].is_null()) {
            fail_at(origin, cell_path, "diagonal cells must be null");
          }
          continue;
        }
        const int w = read_cell(row[v], cell_path);
        if (w != 0) plan.assign_one_way(NodeId{u}, NodeId{v}, WavelengthId{w});
      }
    }
    return plan;
  }

  fail_at(origin, "/table",
          "must have n-1 rows (upper triangle) or n rows (full matrix)");
}

WiringPlan parse_plan(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    rethrow_parse_error(err, text, origin);
  }
  return plan_from_json(doc, origin);
}

WiringPlan load_plan_file(const std::string& path) {
  return parse_plan(read_file(path), path);
}

std::string plan_to_table(const WiringPlan& plan) {
  const int n = plan.node_count();
  const auto cell_text = [&](int u, int v) -> std::string {
    const int w = plan.raw_cell(NodeId{u}, NodeId{v});
    return w == 0 ? "-" : std::to_string(w);
  };

  std::size_t width = 1;
  for (int i = 0; i < n; ++i) {
    width = std::max(width, node_label(NodeId{i}).size());
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      width = std::max(width, cell_text(u, v).size());
    }
  }

  const auto pad = [&](const std::string& s) {
    return std::string(width - std::min(width, s.size()), ' ') + s;
  };
  const auto emit_row = [&](const std::vector<std::string>& fields,
                            std::string& out) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) line += ' ';
      line += pad(fields[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  };

  std::string out;
  std::vector<std::string> fields;
  fields.push_back("");
  for (int v = 1; v < n; ++v) fields.push_back(node_label(NodeId{v}));
  emit_row(fields, out);
  for (int u = 0; u + 1 < n; ++u) {
    fields.clear();
    fields.push_back(node_label(NodeId{u}));
    for (int v = 1; v < n; ++v) {
      fields.push_back(v <= u ? "" : cell_text(u, v));
    }
    emit_row(fields, out);
  }
  return out;
}

std::string plan_to_dot(const WiringPlan& plan) {
  const int n = plan.node_count();
  std::string out = "graph wiring {\n";
  out += "  layout=circo;\n";
  out += "  node [shape=circle, style=filled, fillcolor=white];\n";
  for (int i = 0; i < n; ++i) {
    out += "  \"" + node_label(NodeId{i}) + "\";\n";
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!plan.has(NodeId{u}, NodeId{v})) continue;
      const int w = plan.raw_cell(NodeId{u}, NodeId{v});
      const int palette = (w - 1) % 9 + 1;
      out += "  \"" + node_label(NodeId{u}) + "\" -- \"" +
             node_label(NodeId{v}) + "\" [label=\"" + std::to_string(w) +
             "\", color=\"/pastel19/" + std::to_string(palette) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

ojson verification_to_json(const VerificationReport& report) {
  ojson doc;
  doc["valid"] = report.valid;
  ojson violations = ojson::array();
  for (const auto& violation : report.violations) {
    ojson entry;
    entry["kind"] = to_string(violation.kind);
    ojson nodes = ojson::array();
    for (const auto& node : violation.nodes) nodes.push_back(node_label(node));
    entry["nodes"] = std::move(nodes);
    entry["detail"] = violation.detail;
    violations.push_back(std::move(entry));
  }
  doc["violations"] = std::move(violations);
  return doc;
}

ojson mux_to_json(const MuxSpec& spec) {
  ojson doc;
  doc["channel_count"] = spec.channel_count;
  doc["insertion_loss_db"] = spec.insertion_loss_db;
  doc["adjacent_crosstalk_db"] = spec.adjacent_crosstalk_db;
  doc["nonadjacent_crosstalk_db"] = spec.nonadjacent_crosstalk_db;
  if (spec.has_matrix()) doc["crosstalk_matrix_db"] = spec.crosstalk_matrix_db;
  return doc;
}

namespace {

// Ratios are also quoted in dB, 10*log10(ratio); null when the ratio is
// zero and the dB form is undefined.
ojson ratio_as_db(double ratio) {
  if (ratio <= 0.0) return nullptr;
  return 10.0 * std::log10(ratio);
}

ojson link_to_json(const LinkBudget& link) {
  ojson doc;
  doc["sender"] = node_label(link.sender);
  doc["receiver"] = node_label(link.receiver);
  doc["wavelength"] = link.wavelength.channel;
  doc["sender_fiber_db"] = link.sender_fiber_db;
  doc["router_db"] = link.router_db;
  doc["receiver_fiber_db"] = link.receiver_fiber_db;
  doc["total_loss_db"] = link.total_loss_db;
  ojson crosstalk;
  crosstalk["signal_channel"] = link.crosstalk.signal_channel;
  crosstalk["pre_router_loss_db"] = link.crosstalk.pre_router_loss_db;
  crosstalk["interferer_count"] = link.crosstalk.interferer_count;
  crosstalk["per_channel_ratio"] = link.crosstalk.per_channel_ratio;
  crosstalk["per_channel_ratio_db"] =
      ratio_as_db(link.crosstalk.per_channel_ratio);
  crosstalk["worst_case_sum"] = link.crosstalk.worst_case_sum;
  crosstalk["worst_case_sum_db"] = ratio_as_db(link.crosstalk.worst_case_sum);
  crosstalk["truncated_sum"] = link.crosstalk.truncated_sum;
  crosstalk["truncated_sum_db"] = ratio_as_db(link.crosstalk.truncated_sum);
  doc["crosstalk"] = std::move(crosstalk);
  doc["loss_ok"] = link.loss_ok;
  doc["crosstalk_ok"] = link.crosstalk_ok;
  doc["feasible"] = link.feasible;
  return doc;
}

}  // namespace

ojson network_report_to_json(const NetworkReport& report, const Reach& reach,
                             const FeasibilityPolicy& policy) {
  ojson doc;
  doc["policy"]["max_loss_budget_db"] = policy.max_loss_budget_db;
  doc["policy"]["max_crosstalk_ratio"] = policy.max_crosstalk_ratio;
  ojson reach_doc;
  reach_doc["unbounded"] = reach.unbounded;
  if (reach.unbounded) {
    reach_doc["per_arm_km"] = nullptr;
    reach_doc["end_to_end_km"] = nullptr;
  } else {
    reach_doc["per_arm_km"] = reach.per_arm_km;
    reach_doc["end_to_end_km"] = reach.end_to_end_km;
  }
  doc["reach"] = std::move(reach_doc);
  doc["pair_count"] = report.pair_count;
  doc["feasible_count"] = report.feasible_count;
  doc["all_feasible"] = report.all_feasible;
  ojson pairs = ojson::array();
  for (const auto& link : report.pairs) pairs.push_back(link_to_json(link));
  doc["pairs"] = std::move(pairs);
  return doc;
}

std::string network_report_to_csv(const NetworkReport& report) {
  std::string out = "u,v,wavelength,loss_db,crosstalk,feasible\n";
  for (const auto& link : report.pairs) {
    out += node_label(link.sender) + "," + node_label(link.receiver) + "," +
           std::to_string(link.wavelength.channel) + "," +
           number_text(link.total_loss_db) + "," +
           number_text(link.crosstalk.worst_case_sum) + "," +
           (link.feasible ? "true" : "false") + "\n";
  }
  return out;
}

ojson sim_report_to_json(const SimReport& report) {
  ojson doc;
  doc["generator"] = report.generator;
  doc["seed"] = report.seed;
  doc["trials"] = report.trials;
  doc["passes"] = report.passes;
  doc["signal_channel"] = report.signal_channel;
  doc["mux"] = mux_to_json(report.spec);

  const std::uint64_t trials = report.tallies.trials;
  ojson tallies;
  tallies["delivered"] = tally_to_json(report.tallies.delivered, trials);
  tallies["clean_delivered"] =
      tally_to_json(report.tallies.clean_delivered, trials);
  tallies["lost"] = tally_to_json(report.tallies.lost, trials);
  ojson leaked = ojson::object();
  for (const auto& [offset, count] : report.tallies.leaked) {
    leaked[offset_key(offset)] = tally_to_json(count, trials);
  }
  tallies["leaked"] = std::move(leaked);
  tallies["leaked_total"] =
      tally_to_json(report.tallies.leaked_total(), trials);
  ojson repeated = ojson::object();
  for (const auto& [offset, count] : report.tallies.repeated_leak) {
    repeated[offset_key(offset)] = tally_to_json(count, trials);
  }
  tallies["repeated_leak"] = std::move(repeated);
  doc["tallies"] = std::move(tallies);

  ojson expected;
  expected["delivered"] = report.expected.delivered;
  expected["clean_delivered"] = report.expected.clean_delivered;
  expected["lost"] = report.expected.lost;
  ojson expected_leaked = ojson::object();
  for (const auto& [offset, mass] : report.expected.leaked) {
    expected_leaked[offset_key(offset)] = mass;
  }
  expected["leaked"] = std::move(expected_leaked);
  ojson expected_repeated = ojson::object();
  for (const auto& [offset, mass] : report.expected.repeated_leak) {
    expected_repeated[offset_key(offset)] = mass;
  }
  expected["repeated_leak"] = std::move(expected_repeated);
  doc["expected"] = std::move(expected);
  return doc;
}

ojson comparison_to_json(const ComparisonVerdict& verdict) {
  ojson doc;
  doc["threshold_sigma"] = verdict.threshold_sigma;
  doc["pass"] = verdict.pass;
  ojson scores = ojson::array();
  for (const auto& score : verdict.scores) {
    ojson entry;
    entry["name"] = score.name;
    entry["observed"] = score.observed;
    entry["expected"] = score.expected;
    entry["z"] = score.z;
    scores.push_back(std::move(entry));
  }
  doc["scores"] = std::move(scores);
  return doc;
}

AppConfig default_config() {
  AppConfig cfg;
  cfg.users.reserve(40);
  for (int i = 0; i < 40; ++i) {
    cfg.users.push_back(UserPort{NodeId{i}, 25.0});
  }
  cfg.sim.spec = cfg.mux;
  return cfg;
}

namespace {

void parse_mux_section(const json& section, MuxSpec& mux,
                       const std::string& origin) {
  expect_object(section, origin, "/mux");
  reject_unknown(section,
                 {"channel_count", "insertion_loss_db",
                  "adjacent_crosstalk_db", "nonadjacent_crosstalk_db",
                  "crosstalk_matrix_db"},
                 origin, "/mux");
  if (const auto it = section.find("channel_count"); it != section.end()) {
    mux.channel_count = require_int(*it, origin, "/mux/channel_count");
  }
  if (const auto it = section.find("insertion_loss_db");
      it != section.end()) {
    mux.insertion_loss_db =
        require_number(*it, origin, "/mux/insertion_loss_db");
  }
  if (const auto it = section.find("adjacent_crosstalk_db");
      it != section.end()) {
    mux.adjacent_crosstalk_db =
        require_number(*it, origin, "/mux/adjacent_crosstalk_db");
  }
  if (const auto it = section.find("nonadjacent_crosstalk_db");
      it != section.end()) {
    mux.nonadjacent_crosstalk_db =
        require_number(*it, origin, "/mux/nonadjacent_crosstalk_db");
  }
  if (const auto it = section.find("crosstalk_matrix_db");
      it != section.end()) {
    const std::string where = "/mux/crosstalk_matrix_db";
    if (!it->is_array()) fail_at(origin, where, "must be an array of rows");
    mux.crosstalk_matrix_db.clear();
    for (std::size_t r = 0; r < it->size(); ++r) {
      const json& row = (*it)[r];
      const std::string row_path = where + "/" + std::to_string(r);
      if (!row.is_array()) fail_at(origin, row_path, "must be an array");
      std::vector<double> values;
      values.reserve(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) {
        values.push_back(require_number(
            row[c], origin, row_path + "/" + std::to_string(c)));
      }
      mux.crosstalk_matrix_db.push_back(std::move(values));
    }
  }
  try {
    mux.validate();
  } catch (const std::invalid_argument& err) {
    fail_at(origin, "/mux", err.what());
  }
}

void parse_network_section(const json& section, AppConfig& cfg,
                           const std::string& origin) {
  expect_object(section, origin, "/network");
  reject_unknown(section,
                 {"fiber_attenuation_db_per_km", "users", "uniform_users"},
                 origin, "/network");
  if (const auto it = section.find("fiber_attenuation_db_per_km");
      it != section.end()) {
    const std::string where = "/network/fiber_attenuation_db_per_km";
    cfg.fiber_attenuation_db_per_km = require_number(*it, origin, where);
    if (cfg.fiber_attenuation_db_per_km < 0.0) {
      fail_at(origin, where, "must be >= 0");
    }
  }
  const auto users_it = section.find("users");
  const auto uniform_it = section.find("uniform_users");
  if (users_it != section.end() && uniform_it != section.end()) {
    fail_at(origin, "/network", "give either users or uniform_users, not both");
  }
  if (users_it != section.end()) {
    if (!users_it->is_array()) {
      fail_at(origin, "/network/users", "must be an array");
    }
    cfg.users.clear();
    for (std::size_t i = 0; i < users_it->size(); ++i) {
      const json& entry = (*users_it)[i];
      const std::string entry_path = "/network/users/" + std::to_string(i);
      expect_object(entry, origin, entry_path);
      reject_unknown(entry, {"node", "arterial_length_km"}, origin,
                     entry_path);
      NodeId node{static_cast<int>(i)};
      if (const auto node_it = entry.find("node"); node_it != entry.end()) {
        const std::string node_path = entry_path + "/node";
        if (node_it->is_string()) {
          const auto parsed = node_from_label(node_it->get<std::string>());
          if (!parsed) {
            fail_at(origin, node_path,
                    "\"" + node_it->get<std::string>() +
                        "\" is not a node label");
          }
          node = *parsed;
        } else {
          node.index = require_int(*node_it, origin, node_path);
          if (node.index < 0) fail_at(origin, node_path, "must be >= 0");
        }
      }
      const auto len_it = entry.find("arterial_length_km");
      if (len_it == entry.end()) {
        fail_at(origin, entry_path + "/arterial_length_km", "required");
      }
      const double length =
          require_number(*len_it, origin, entry_path + "/arterial_length_km");
      if (length < 0.0) {
        fail_at(origin, entry_path + "/arterial_length_km", "must be >= 0");
      }
      cfg.users.push_back(UserPort{node, length});
    }
  } else if (uniform_it != section.end()) {
    const std::string where = "/network/uniform_users";
    expect_object(*uniform_it, origin, where);
    reject_unknown(*uniform_it, {"count", "arterial_length_km"}, origin,
                   where);
    const auto count_it = uniform_it->find("count");
    if (count_it == uniform_it->end()) {
      fail_at(origin, where + "/count", "required");
    }
    const int count = require_int(*count_it, origin, where + "/count");
    if (count < 1) fail_at(origin, where + "/count", "must be positive");
    const auto len_it = uniform_it->find("arterial_length_km");
    if (len_it == uniform_it->end()) {
      fail_at(origin, where + "/arterial_length_km", "required");
    }
    const double length =
        require_number(*len_it, origin, where + "/arterial_length_km");
    if (length < 0.0) {
      fail_at(origin, where + "/arterial_length_km", "must be >= 0");
    }
    cfg.users.clear();
    cfg.users.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      cfg.users.push_back(UserPort{NodeId{i}, length});
    }
  }
}

void parse_policy_section(const json& section, FeasibilityPolicy& policy,
                          const std::string& origin) {
  expect_object(section, origin, "/policy");
  reject_unknown(section, {"max_loss_budget_db", "max_crosstalk_ratio"},
                 origin, "/policy");
  if (const auto it = section.find("max_loss_budget_db");
      it != section.end()) {
    const std::string where = "/policy/max_loss_budget_db";
    policy.max_loss_budget_db = require_number(*it, origin, where);
    if (policy.max_loss_budget_db < 0.0) fail_at(origin, where, "must be >= 0");
  }
  if (const auto it = section.find("max_crosstalk_ratio");
      it != section.end()) {
    const std::string where = "/policy/max_crosstalk_ratio";
    policy.max_crosstalk_ratio = require_number(*it, origin, where);
    if (policy.max_crosstalk_ratio < 0.0) fail_at(origin, where, "must be >= 0");
  }
}

void parse_sim_section(const json& section, AppConfig& cfg,
                       const std::string& origin) {
  expect_object(section, origin, "/sim");
  reject_unknown(section,
                 {"trials", "seed", "passes", "signal_channel", "workers"},
                 origin, "/sim");
  if (const auto it = section.find("trials"); it != section.end()) {
    cfg.sim.trials = require_uint(*it, origin, "/sim/trials");
    if (cfg.sim.trials == 0) fail_at(origin, "/sim/trials", "must be >= 1");
  }
  if (const auto it = section.find("seed"); it != section.end()) {
    cfg.sim.seed = require_uint(*it, origin, "/sim/seed");
  }
  if (const auto it = section.find("passes"); it != section.end()) {
    cfg.sim.passes = require_int(*it, origin, "/sim/passes");
    if (cfg.sim.passes < 1) fail_at(origin, "/sim/passes", "must be >= 1");
  }
  if (const auto it = section.find("signal_channel"); it != section.end()) {
    const std::string where = "/sim/signal_channel";
    cfg.sim.signal_channel = require_int(*it, origin, where);
    if (cfg.sim.signal_channel < 0 ||
        cfg.sim.signal_channel > cfg.mux.channel_count) {
      fail_at(origin, where,
              "must be 0 (mid-band) or a channel in [1, " +
                  std::to_string(cfg.mux.channel_count) + "]");
    }
  }
  if (const auto it = section.find("workers"); it != section.end()) {
    cfg.sim.workers = require_int(*it, origin, "/sim/workers");
    if (cfg.sim.workers < 0) fail_at(origin, "/sim/workers", "must be >= 0");
  }
}

}  // namespace

AppConfig config_from_json(const nlohmann::json& doc,
                           const std::string& origin) {
  AppConfig cfg = default_config();
  expect_object(doc, origin, "/");
  reject_unknown(doc, {"mux", "network", "policy", "sim"}, origin, "");
  if (const auto it = doc.find("mux"); it != doc.end()) {
    parse_mux_section(*it, cfg.mux, origin);
  }
  if (const auto it = doc.find("network"); it != doc.end()) {
    parse_network_section(*it, cfg, origin);
  }
  if (const auto it = doc.find("policy"); it != doc.end()) {
    parse_policy_section(*it, cfg.policy, origin);
  }
  if (const auto it = doc.find("sim"); it != doc.end()) {
    parse_sim_section(*it, cfg, origin);
  }
  cfg.sim.spec = cfg.mux;
  return cfg;
}

AppConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    rethrow_parse_error(err, text, origin);
  }
  return config_from_json(doc, origin);
}

AppConfig load_config_file(const std::string& path) {
  return parse_config(read_file(path), path);
}

StarNetwork make_network(const AppConfig& config) {
  if (config.users.size() < 2) {
    throw ConfigError("network: a star needs at least 2 users");
  }
  const int n = static_cast<int>(config.users.size());
  const int colors = expected_color_count(n);
  if (colors > config.mux.channel_count) {
    throw ConfigError("network: " + std::to_string(n) + " users need " +
                      std::to_string(colors) + " wavelengths but the MUX has " +
                      std::to_string(config.mux.channel_count) + " channels");
  }
  StarNetwork net{build_plan(n), config.mux, config.users,
                  config.fiber_attenuation_db_per_km};
  try {
    validate_network(net);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("network: ") + err.what());
  }
  return net;
}

}  // namespace qrouter
