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

#ifndef QROUTER_SERIALIZE_HPP
#define QROUTER_SERIALIZE_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qrouter/network.hpp"
#include "qrouter/photonics.hpp"
#include "qrouter/transport.hpp"
#include "qrouter/wiring.hpp"

namespace qrouter {

// Insertion-ordered JSON keeps emitted documents byte-stable.
using ojson = nlohmann::ordered_json;

/// Compact plan document: {"n": 5, "colors": 5, "table": [[2,3,4,5],...]}
/// where table[u] lists the cells (u, u+1) .. (u, n-1) and null marks an
/// unassigned pair.
ojson plan_to_json(const WiringPlan& plan);

/// Accepts the compact upper-triangle form above, or a full n x n matrix
/// (nulls on the diagonal) so that asymmetric tables round-trip for
/// verification. Throws ConfigError on malformed documents.
WiringPlan plan_from_json(const nlohmann::json& doc,
                          const std::string& origin = "<plan>");

WiringPlan parse_plan(const std::string& text, const std::string& origin);
WiringPlan load_plan_file(const std::string& path);

/// Fixed-width text rendering of the upper triangle:
///
///     B C D E
///   A 2 3 4 5
///   B   4 5 1
///   C     1 2
///   D       3
///
/// Unassigned pairs render as "-".
std::string plan_to_table(const WiringPlan& plan);

/// Graphviz document (circo layout, one edge per pair, edges colored by
/// wavelength modulo the pastel19 palette).
std::string plan_to_dot(const WiringPlan& plan);

ojson verification_to_json(const VerificationReport& report);

ojson mux_to_json(const MuxSpec& spec);

ojson network_report_to_json(const NetworkReport& report, const Reach& reach,
                             const FeasibilityPolicy& policy);

/// Header "u,v,wavelength,loss_db,crosstalk,feasible", one row per pair in
/// report order.
std::string network_report_to_csv(const NetworkReport& report);

ojson sim_report_to_json(const SimReport& report);

ojson comparison_to_json(const ComparisonVerdict& verdict);

/// Carries "<origin>:<line>:<column>: <reason>" for syntax problems and
/// "<origin>: <json pointer>: <reason>" for semantic ones.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything the command-line tool can be told through one JSON file.
/// Sections and keys are all optional; missing ones take the defaults
/// below, unknown keys are rejected (a typo should not silently yield the
/// default run).
///
///   {
///     "mux":     {"channel_count": 40, "insertion_loss_db": 5.0,
///                 "adjacent_crosstalk_db": -25.0,
///                 "nonadjacent_crosstalk_db": -30.0,
///                 "crosstalk_matrix_db": [[...], ...]},
///     "network": {"fiber_attenuation_db_per_km": 0.2,
///                 "users": [{"node": "A", "arterial_length_km": 25.0}, ...]
///                 | "uniform_users": {"count": 40,
///                                     "arterial_length_km": 25.0}},
///     "policy":  {"max_loss_budget_db": 20.0,
///                 "max_crosstalk_ratio": 1.0e-3},
///     "sim":     {"trials": 1000000, "seed": 42, "passes": 2,
///                 "signal_channel": 0, "workers": 0}
///   }
///
/// "node" takes an index or a letter label and may be omitted to number
/// users sequentially.
struct AppConfig {
  MuxSpec mux;
  double fiber_attenuation_db_per_km = 0.2;
  std::vector<UserPort> users;  // default: 40 users, 25 km arms
  FeasibilityPolicy policy;
  SimConfig sim;  // sim.spec mirrors mux
};

AppConfig default_config();

AppConfig config_from_json(const nlohmann::json& doc,
                           const std::string& origin = "<config>");

/// Parses and validates config text. Throws ConfigError with a
/// line:column position on syntax errors.
AppConfig parse_config(const std::string& text, const std::string& origin);

AppConfig load_config_file(const std::string& path);

/// Assembles the star described by the config: canonical plan for
/// users.size() nodes, the configured MUX, one arterial fiber per user.
/// Throws ConfigError when the plan needs more wavelengths than the MUX
/// has channels.
StarNetwork make_network(const AppConfig& config);

}  // namespace qrouter

#endif  // QROUTER_SERIALIZE_HPP
