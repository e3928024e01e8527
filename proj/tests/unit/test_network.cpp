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

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qrouter/network.hpp"

using namespace qrouter;
using doctest::Approx;

namespace {

StarNetwork uniform_star(int n, double arm_km) {
  std::vector<UserPort> users;
  users.reserve(n);
  for (int i = 0; i < n; ++i) users.push_back(UserPort{NodeId{i}, arm_km});
  return StarNetwork{build_plan(n), MuxSpec{}, std::move(users), 0.2};
}

}  // namespace

TEST_CASE("arterial losses come from length and attenuation") {
  const StarNetwork net = uniform_star(4, 25.0);
  CHECK(net.arterial_length_km(NodeId{2}) == 25.0);
  CHECK(net.arterial_loss_db(NodeId{2}) == Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(net.arterial_length_km(NodeId{9}), std::out_of_range);
}

TEST_CASE("network validation") {
  CHECK_NOTHROW(validate_network(uniform_star(6, 10.0)));

  StarNetwork missing = uniform_star(4, 10.0);
  missing.users.pop_back();
  CHECK_THROWS_AS(validate_network(missing), std::invalid_argument);

  StarNetwork duplicate = uniform_star(4, 10.0);
  duplicate.users[3].node = NodeId{0};
  CHECK_THROWS_AS(validate_network(duplicate), std::invalid_argument);

  StarNetwork negative = uniform_star(4, 10.0);
  negative.users[1].arterial_length_km = -1.0;
  CHECK_THROWS_AS(validate_network(negative), std::invalid_argument);

  StarNetwork bad_alpha = uniform_star(4, 10.0);
  bad_alpha.fiber_attenuation_db_per_km = -0.2;
  CHECK_THROWS_AS(validate_network(bad_alpha), std::invalid_argument);
}

TEST_CASE("link budget of the reference 25 km star") {
  const StarNetwork net = uniform_star(40, 25.0);
  const LinkBudget link =
      link_budget(net, NodeId{0}, NodeId{1}, FeasibilityPolicy{});
  CHECK(link.sender_fiber_db == Approx(5.0).epsilon(1e-15));
  CHECK(link.router_db == 10.0);
  CHECK(link.receiver_fiber_db == Approx(5.0).epsilon(1e-15));
  CHECK(link.total_loss_db == Approx(20.0).epsilon(1e-15));
  CHECK(link.wavelength.channel == 2);
  CHECK(link.loss_ok);

  // Worst-case aggregate crosstalk with 5 dB of fiber in front of the
  // router, mid-band signal.
  CHECK(link.crosstalk.signal_channel == 20);
  CHECK(link.crosstalk.worst_case_sum ==
        Approx(1.8024982662959762e-4).epsilon(1e-12));
  CHECK(link.crosstalk_ok);
  CHECK(link.feasible);

  CHECK_THROWS_AS(link_budget(net, NodeId{0}, NodeId{0}, FeasibilityPolicy{}),
                  std::invalid_argument);
}

TEST_CASE("total loss is direction-free, crosstalk is not") {
  StarNetwork net = uniform_star(6, 5.0);
  net.users[1].arterial_length_km = 42.0;
  const FeasibilityPolicy policy;
  const LinkBudget ab = link_budget(net, NodeId{0}, NodeId{1}, policy);
  const LinkBudget ba = link_budget(net, NodeId{1}, NodeId{0}, policy);
  CHECK(ab.total_loss_db == Approx(ba.total_loss_db).epsilon(1e-12));
  // The lossier sending arm attenuates the signal more before the router,
  // so the crosstalk sum seen at the receiver is larger.
  CHECK(ba.crosstalk.worst_case_sum > ab.crosstalk.worst_case_sum);
}

TEST_CASE("feasibility splits into loss and crosstalk verdicts") {
  FeasibilityPolicy policy;  // 20 dB, 1e-3

  // 30 km arms: 6 + 10 + 6 = 22 dB, over budget, crosstalk still fine.
  const StarNetwork far = uniform_star(4, 30.0);
  const LinkBudget over = link_budget(far, NodeId{0}, NodeId{1}, policy);
  CHECK_FALSE(over.loss_ok);
  CHECK(over.crosstalk_ok);
  CHECK_FALSE(over.feasible);

  // A tight crosstalk ceiling fails the same link the other way.
  FeasibilityPolicy strict;
  strict.max_crosstalk_ratio = 1e-6;
  const StarNetwork near = uniform_star(4, 10.0);
  const LinkBudget noisy = link_budget(near, NodeId{0}, NodeId{1}, strict);
  CHECK(noisy.loss_ok);
  CHECK_FALSE(noisy.crosstalk_ok);
  CHECK_FALSE(noisy.feasible);
}

TEST_CASE("reach under the default budget") {
  const FeasibilityPolicy policy;  // 20 dB budget

  // 5 dB MUX: 20 - 10 leaves 10 dB for fiber, 5 per arm, 25 km each way.
  const StarNetwork net = uniform_star(4, 1.0);
  const Reach reach = max_reach_km(net, policy);
  CHECK_FALSE(reach.unbounded);
  CHECK(reach.per_arm_km == Approx(25.0).epsilon(1e-9));
  CHECK(reach.end_to_end_km == Approx(50.0).epsilon(1e-9));

  // A 1 dB MUX stretches the same budget to 45 km arms.
  StarNetwork low_loss = net;
  low_loss.mux.insertion_loss_db = 1.0;
  const Reach far = max_reach_km(low_loss, policy);
  CHECK(far.per_arm_km == Approx(45.0).epsilon(1e-9));
  CHECK(far.end_to_end_km == Approx(90.0).epsilon(1e-9));
  CHECK(far.end_to_end_km >= 90.0 - 1e-9);
}

TEST_CASE("reach edge cases") {
  StarNetwork net = uniform_star(4, 1.0);
  FeasibilityPolicy policy;

  // The router alone eats the whole budget.
  policy.max_loss_budget_db = 10.0;
  Reach none = max_reach_km(net, policy);
  CHECK_FALSE(none.unbounded);
  CHECK(none.per_arm_km == 0.0);
  CHECK(none.end_to_end_km == 0.0);

  policy.max_loss_budget_db = 8.0;
  none = max_reach_km(net, policy);
  CHECK(none.per_arm_km == 0.0);

  // Lossless fiber with headroom left: no distance limit.
  policy.max_loss_budget_db = 20.0;
  net.fiber_attenuation_db_per_km = 0.0;
  const Reach free = max_reach_km(net, policy);
  CHECK(free.unbounded);
  CHECK(std::isinf(free.per_arm_km));
  CHECK(std::isinf(free.end_to_end_km));
}

TEST_CASE("network report covers every pair once, worst first") {
  StarNetwork net = uniform_star(5, 10.0);
  net.users[2].arterial_length_km = 30.0;  // C is the lossy spoke
  const NetworkReport report = network_report(net, FeasibilityPolicy{});
  CHECK(report.pair_count == 10);
  CHECK(report.pairs.size() == 10);

  // 30 km + 10 km arms: 6 + 10 + 2 = 18 dB beats the uniform 14 dB rows.
  for (int i = 0; i < 4; ++i) {
    CHECK(report.pairs[i].total_loss_db == Approx(18.0).epsilon(1e-12));
    // The lossier endpoint C sends, which is the worst direction.
    CHECK(report.pairs[i].sender.index == 2);
  }
  for (std::size_t i = 1; i < report.pairs.size(); ++i) {
    CHECK(report.pairs[i - 1].total_loss_db >=
          report.pairs[i].total_loss_db);
  }
  CHECK(report.feasible_count == 10);
  CHECK(report.all_feasible);
}

TEST_CASE("network report flags infeasible pairs") {
  StarNetwork net = uniform_star(4, 25.0);
  net.users[0].arterial_length_km = 60.0;
  const NetworkReport report = network_report(net, FeasibilityPolicy{});
  CHECK(report.pair_count == 6);
  // Every pair through A is over budget: 12 + 10 + 5 = 27 dB.
  CHECK(report.feasible_count == 3);
  CHECK_FALSE(report.all_feasible);
  CHECK(report.pairs[0].total_loss_db == Approx(27.0).epsilon(1e-12));
  CHECK_FALSE(report.pairs[0].feasible);
}

TEST_CASE("zero length arms leave only the router loss") {
  const StarNetwork net = uniform_star(6, 0.0);
  const LinkBudget link =
      link_budget(net, NodeId{1}, NodeId{4}, FeasibilityPolicy{});
  CHECK(link.sender_fiber_db == 0.0);
  CHECK(link.receiver_fiber_db == 0.0);
  CHECK(link.total_loss_db == Approx(10.0).epsilon(1e-15));
}

TEST_CASE("arms placed at the reach limit land exactly on budget") {
  const FeasibilityPolicy policy;
  for (double il : {0.5, 1.0, 3.25, 5.0}) {
    StarNetwork net = uniform_star(8, 1.0);
    net.mux.insertion_loss_db = il;
    const Reach reach = max_reach_km(net, policy);
    REQUIRE_FALSE(reach.unbounded);

    StarNetwork at_limit = net;
    for (auto& user : at_limit.users) {
      user.arterial_length_km = reach.per_arm_km;
    }
    const LinkBudget link =
        link_budget(at_limit, NodeId{0}, NodeId{3}, policy);
    CHECK(link.total_loss_db ==
          Approx(policy.max_loss_budget_db).epsilon(1e-9));
    CHECK(link.loss_ok);
  }
}

TEST_CASE("stretching one arm never lowers a loss that crosses it") {
  StarNetwork net = uniform_star(5, 12.0);
  net.users[3].arterial_length_km = 4.0;
  const FeasibilityPolicy policy;
  const NetworkReport before = network_report(net, policy);

  StarNetwork longer = net;
  longer.users[1].arterial_length_km += 7.5;
  const NetworkReport after = network_report(longer, policy);

  auto find_loss = [](const NetworkReport& report, int u, int v) {
    for (const auto& pair : report.pairs) {
      const int a = pair.sender.index;
      const int b = pair.receiver.index;
      if ((a == u && b == v) || (a == v && b == u)) {
        return pair.total_loss_db;
      }
    }
    REQUIRE(false);
    return 0.0;
  };

  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) {
      const double was = find_loss(before, u, v);
      const double now = find_loss(after, u, v);
      if (u == 1 || v == 1) {
        CHECK(now == Approx(was + 1.5).epsilon(1e-12));
      } else {
        CHECK(now == Approx(was).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("reported wavelengths agree with the routing table") {
  const StarNetwork net = uniform_star(9, 5.0);
  const NetworkReport report = network_report(net, FeasibilityPolicy{});
  for (const auto& pair : report.pairs) {
    const std::optional<NodeId> routed =
        route(net.plan, pair.sender, pair.wavelength);
    REQUIRE(routed.has_value());
    CHECK(routed->index == pair.receiver.index);
    CHECK(net.plan.wavelength(pair.sender, pair.receiver).channel ==
          pair.wavelength.channel);
  }
}
