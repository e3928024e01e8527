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

#ifndef QROUTER_NETWORK_HPP
#define QROUTER_NETWORK_HPP

#include <cstddef>
#include <vector>

#include "qrouter/photonics.hpp"
#include "qrouter/wiring.hpp"

namespace qrouter {

struct UserPort {
  NodeId node;
  double arterial_length_km = 0.0;
};

/// A star network: the router's wiring plan, the MUX model it is built
/// from, and one arterial fiber per user.
struct StarNetwork {
  WiringPlan plan;
  MuxSpec mux;
  std::vector<UserPort> users;            // exactly one entry per plan node
  double fiber_attenuation_db_per_km = 0.2;

  double arterial_length_km(NodeId node) const;
  double arterial_loss_db(NodeId node) const;
};

/// Throws std::invalid_argument unless users cover every plan node exactly
/// once with non-negative lengths and attenuation.
void validate_network(const StarNetwork& net);

struct FeasibilityPolicy {
  double max_loss_budget_db = 20.0;
  double max_crosstalk_ratio = 1.0e-3;
};

/// End-to-end budget for one ordered pair. The loss is symmetric
/// (sender fiber + two MUX passes + receiver fiber); the crosstalk sum is
/// not, because the worst case loads the full sender-side fiber loss onto
/// the signal while interferers enter the router clean.
struct LinkBudget {
  NodeId sender;
  NodeId receiver;
  WavelengthId wavelength;
  double sender_fiber_db = 0.0;
  double router_db = 0.0;
  double receiver_fiber_db = 0.0;
  double total_loss_db = 0.0;
  CrosstalkAssessment crosstalk;
  bool loss_ok = false;
  bool crosstalk_ok = false;
  bool feasible = false;  // loss_ok && crosstalk_ok
};

LinkBudget link_budget(const StarNetwork& net, NodeId u, NodeId v,
                       const FeasibilityPolicy& policy);

/// Longest symmetric arterial arm the budget allows,
/// (budget - 2*IL) / (2*alpha), floored at zero. Reported per arm and end
/// to end, since "reach" is quoted both ways. With zero fiber attenuation
/// and budget headroom left after the router, reach is unbounded.
struct Reach {
  bool unbounded = false;
  double per_arm_km = 0.0;
  double end_to_end_km = 0.0;
};

Reach max_reach_km(const StarNetwork& net, const FeasibilityPolicy& policy);

struct NetworkReport {
  std::vector<LinkBudget> pairs;  // total_loss_db descending
  std::size_t pair_count = 0;
  std::size_t feasible_count = 0;
  bool all_feasible = false;
};

/// One budget per unordered pair. Each row is computed in the conservative
/// direction: the sender is the endpoint with the lossier arterial fiber,
/// which maximizes the crosstalk sum (total loss does not depend on the
/// direction). Rows come sorted by total loss descending, ties by node
/// indices, so the worst pair is first.
NetworkReport network_report(const StarNetwork& net,
                             const FeasibilityPolicy& policy);

}  // namespace qrouter

#endif  // QROUTER_NETWORK_HPP
