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

#include "qrouter/network.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qrouter {

double StarNetwork::arterial_length_km(NodeId node) const {
  for (const auto& user : users) {
    if (user.node == node) return user.arterial_length_km;
  }
  throw std::out_of_range("no user attached to node " + node_label(node));
}

double StarNetwork::arterial_loss_db(NodeId node) const {
  return arterial_length_km(node) * fiber_attenuation_db_per_km;
}

void validate_network(const StarNetwork& net) {
  if (!(net.fiber_attenuation_db_per_km >= 0.0)) {
    throw std::invalid_argument("fiber attenuation must be >= 0 dB/km");
  }
  const int n = net.plan.node_count();
  if (static_cast<int>(net.users.size()) != n) {
    throw std::invalid_argument(
        "network must attach exactly one user per plan node (" +
        std::to_string(n) + " expected, " + std::to_string(net.users.size()) +
        " given)");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& user : net.users) {
    if (user.node.index < 0 || user.node.index >= n) {
      throw std::invalid_argument("user node " +
                                  std::to_string(user.node.index) +
                                  " outside plan");
    }
    if (seen[user.node.index]) {
      throw std::invalid_argument("duplicate user entry for node " +
                                  node_label(user.node));
    }
    seen[user.node.index] = true;
    if (!(user.arterial_length_km >= 0.0)) {
      throw std::invalid_argument("arterial length for node " +
                                  node_label(user.node) +
                                  " must be >= 0 km");
    }
  }
}

LinkBudget link_budget(const StarNetwork& net, NodeId u, NodeId v,
                       const FeasibilityPolicy& policy) {
  if (u == v) {
    throw std::invalid_argument("no self-link: " + node_label(u));
  }
  LinkBudget budget;
  budget.sender = u;
  budget.receiver = v;
  budget.wavelength = wavelength_for(net.plan, u, v);
  budget.sender_fiber_db = net.arterial_loss_db(u);
  budget.receiver_fiber_db = net.arterial_loss_db(v);
  budget.router_db = router_insertion_loss_db(net.mux);
  budget.total_loss_db =
      budget.sender_fiber_db + budget.router_db + budget.receiver_fiber_db;
  budget.crosstalk = worst_case_crosstalk_sum(
      net.mux, budget.sender_fiber_db, mid_band_channel(net.mux.channel_count));
  budget.loss_ok = budget.total_loss_db <= policy.max_loss_budget_db;
  budget.crosstalk_ok =
      budget.crosstalk.worst_case_sum <= policy.max_crosstalk_ratio;
  budget.feasible = budget.loss_ok && budget.crosstalk_ok;
  return budget;
}

Reach max_reach_km(const StarNetwork& net, const FeasibilityPolicy& policy) {
  const double headroom =
      policy.max_loss_budget_db - router_insertion_loss_db(net.mux);
  Reach reach;
  if (headroom <= 0.0) {
    return reach;  // the router alone exhausts the budget
  }
  if (net.fiber_attenuation_db_per_km == 0.0) {
    reach.unbounded = true;
    reach.per_arm_km = std::numeric_limits<double>::infinity();
    reach.end_to_end_km = std::numeric_limits<double>::infinity();
    return reach;
  }
  reach.per_arm_km = headroom / (2.0 * net.fiber_attenuation_db_per_km);
  reach.end_to_end_km = 2.0 * reach.per_arm_km;
  return reach;
}

NetworkReport network_report(const StarNetwork& net,
                             const FeasibilityPolicy& policy) {
  validate_network(net);
  NetworkReport report;
  const int n = net.plan.node_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      NodeId u{a};
      NodeId v{b};
      // Worst direction: the lossier arm sends.
      if (net.arterial_loss_db(v) > net.arterial_loss_db(u)) std::swap(u, v);
      report.pairs.push_back(link_budget(net, u, v, policy));
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const LinkBudget& lhs, const LinkBudget& rhs) {
              if (lhs.total_loss_db != rhs.total_loss_db) {
                return lhs.total_loss_db > rhs.total_loss_db;
              }
              const auto lo = [](const LinkBudget& lb) {
                return std::minmax(lb.sender.index, lb.receiver.index);
              };
              return lo(lhs) < lo(rhs);
            });
  report.pair_count = report.pairs.size();
  for (const auto& pair : report.pairs) {
    if (pair.feasible) ++report.feasible_count;
  }
  report.all_feasible = report.feasible_count == report.pair_count;
  return report;
}

}  // namespace qrouter
