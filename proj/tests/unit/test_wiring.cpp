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

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qrouter/wiring.hpp"

using namespace qrouter;

namespace {

bool has_violation(const VerificationReport& report, ViolationKind kind) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("node labels follow spreadsheet naming") {
  CHECK(node_label(NodeId{0}) == "A");
  CHECK(node_label(NodeId{1}) == "B");
  CHECK(node_label(NodeId{25}) == "Z");
  CHECK(node_label(NodeId{26}) == "AA");
  CHECK(node_label(NodeId{27}) == "AB");
  CHECK(node_label(NodeId{51}) == "AZ");
  CHECK(node_label(NodeId{52}) == "BA");
  CHECK(node_label(NodeId{701}) == "ZZ");
  CHECK(node_label(NodeId{702}) == "AAA");
  CHECK_THROWS_AS(node_label(NodeId{-1}), std::invalid_argument);
}

TEST_CASE("node labels round-trip") {
  for (int i = 0; i < 800; ++i) {
    const auto back = node_from_label(node_label(NodeId{i}));
    REQUIRE(back.has_value());
    CHECK(back->index == i);
  }
  CHECK_FALSE(node_from_label("").has_value());
  CHECK_FALSE(node_from_label("a").has_value());
  CHECK_FALSE(node_from_label("A1").has_value());
  CHECK_FALSE(node_from_label(" A").has_value());
}

TEST_CASE("chromatic index follows the parity law") {
  CHECK(expected_color_count(2) == 1);
  CHECK(expected_color_count(3) == 3);
  CHECK(expected_color_count(4) == 3);
  CHECK(expected_color_count(5) == 5);
  CHECK(expected_color_count(6) == 5);
  CHECK(expected_color_count(40) == 39);
  CHECK(expected_color_count(41) == 41);
  CHECK(demux_port_count(4) == 3);
  CHECK(demux_port_count(5) == 5);
  CHECK(demux_port_count(6) == 5);
  CHECK(demux_port_count(7) == 7);
  CHECK(demux_port_count(40) == 39);
  CHECK_THROWS_AS(expected_color_count(1), std::invalid_argument);
}

TEST_CASE("the 5-node plan matches the worked table") {
  const WiringPlan plan = build_plan(5);
  CHECK(plan.node_count() == 5);
  CHECK(plan.color_count() == 5);
  // First row: A pairs with B,C,D,E on 2,3,4,5.
  CHECK(plan.wavelength(NodeId{0}, NodeId{1}).channel == 2);
  CHECK(plan.wavelength(NodeId{0}, NodeId{2}).channel == 3);
  CHECK(plan.wavelength(NodeId{0}, NodeId{3}).channel == 4);
  CHECK(plan.wavelength(NodeId{0}, NodeId{4}).channel == 5);
  CHECK(plan.wavelength(NodeId{1}, NodeId{2}).channel == 4);
  CHECK(plan.wavelength(NodeId{1}, NodeId{3}).channel == 5);
  CHECK(plan.wavelength(NodeId{1}, NodeId{4}).channel == 1);
  CHECK(plan.wavelength(NodeId{2}, NodeId{3}).channel == 1);
  CHECK(plan.wavelength(NodeId{2}, NodeId{4}).channel == 2);
  CHECK(plan.wavelength(NodeId{3}, NodeId{4}).channel == 3);
}

TEST_CASE("built plans verify clean across sizes") {
  for (int n = 2; n <= 64; ++n) {
    const WiringPlan plan = build_plan(n);
    CHECK(plan.color_count() == expected_color_count(n));
    const VerificationReport report = verify_plan(plan);
    CHECK(report.valid);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("verification agrees with a from-scratch checker on small plans") {
  // The oracle re-derives validity with nothing but sets: symmetric, total,
  // proper at every vertex, in range.
  const auto oracle_valid = [](const WiringPlan& plan) {
    const int n = plan.node_count();
    if (plan.color_count() != (n % 2 == 0 ? n - 1 : n)) return false;
    for (int u = 0; u < n; ++u) {
      std::set<int> seen;
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        const int w = plan.raw_cell(NodeId{u}, NodeId{v});
        const int back = plan.raw_cell(NodeId{v}, NodeId{u});
        if (w == 0 || back != w) return false;
        if (w < 1 || w > plan.color_count()) return false;
        if (!seen.insert(w).second) return false;
      }
    }
    return true;
  };

  std::mt19937 rng(77);
  for (int n = 2; n <= 10; ++n) {
    WiringPlan plan = build_plan(n);
    CHECK(oracle_valid(plan) == verify_plan(plan).valid);

    // Random single-cell tampering must flip both verdicts in lockstep.
    for (int round = 0; round < 20; ++round) {
      WiringPlan mutated = plan;
      std::uniform_int_distribution<int> node(0, n - 1);
      std::uniform_int_distribution<int> color(1, plan.color_count() + 1);
      const int u = node(rng);
      int v = node(rng);
      if (u == v) v = (v + 1) % n;
      mutated.assign_one_way(NodeId{u}, NodeId{v}, WavelengthId{color(rng)});
      CHECK(oracle_valid(mutated) == verify_plan(mutated).valid);
    }
  }
}

TEST_CASE("verification pinpoints each violation kind") {
  SUBCASE("duplicate at a vertex") {
    WiringPlan plan = build_plan(5);
    const int w = plan.raw_cell(NodeId{0}, NodeId{2});
    plan.assign(NodeId{0}, NodeId{1}, WavelengthId{w});
    const auto report = verify_plan(plan);
    CHECK_FALSE(report.valid);
    CHECK(has_violation(report, ViolationKind::kDuplicateAtVertex));
  }
  SUBCASE("asymmetric cell") {
    WiringPlan plan = build_plan(4);
    plan.assign_one_way(NodeId{0}, NodeId{1}, WavelengthId{3});
    const auto report = verify_plan(plan);
    CHECK_FALSE(report.valid);
    CHECK(has_violation(report, ViolationKind::kAsymmetry));
  }
  SUBCASE("missing pair") {
    WiringPlan plan(3, 3);
    plan.assign(NodeId{0}, NodeId{1}, WavelengthId{1});
    const auto report = verify_plan(plan);
    CHECK_FALSE(report.valid);
    CHECK(has_violation(report, ViolationKind::kMissingPair));
  }
  SUBCASE("color out of range") {
    WiringPlan plan = build_plan(4);
    plan.assign(NodeId{0}, NodeId{1}, WavelengthId{9});
    const auto report = verify_plan(plan);
    CHECK_FALSE(report.valid);
    CHECK(has_violation(report, ViolationKind::kBadColorRange));
  }
  SUBCASE("declared color count off the parity law") {
    WiringPlan plan(4, 5);
    const WiringPlan source = build_plan(4);
    for (int u = 0; u < 4; ++u) {
      for (int v = u + 1; v < 4; ++v) {
        plan.assign(NodeId{u}, NodeId{v},
                    WavelengthId{source.raw_cell(NodeId{u}, NodeId{v})});
      }
    }
    const auto report = verify_plan(plan);
    CHECK_FALSE(report.valid);
    CHECK(has_violation(report, ViolationKind::kBadColorRange));
  }
}

TEST_CASE("routing inverts the table") {
  std::vector<int> sizes = {40, 64};
  for (int n = 2; n <= 16; ++n) sizes.push_back(n);
  for (int n : sizes) {
    const WiringPlan plan = build_plan(n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        const WavelengthId w = wavelength_for(plan, NodeId{u}, NodeId{v});
        const auto hop = route(plan, NodeId{u}, w);
        REQUIRE(hop.has_value());
        CHECK(hop->index == v);
      }
    }
  }
}

TEST_CASE("odd plans idle one wavelength per node") {
  const WiringPlan plan = build_plan(5);
  for (int u = 0; u < 5; ++u) {
    int idle = 0;
    for (int w = 1; w <= 5; ++w) {
      if (!route(plan, NodeId{u}, WavelengthId{w}).has_value()) ++idle;
    }
    CHECK(idle == 1);
  }
  // Even plans use every wavelength at every node.
  const WiringPlan even = build_plan(6);
  for (int u = 0; u < 6; ++u) {
    for (int w = 1; w <= 5; ++w) {
      CHECK(route(even, NodeId{u}, WavelengthId{w}).has_value());
    }
  }
}

TEST_CASE("plan guards its arguments") {
  CHECK_THROWS_AS(WiringPlan(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(WiringPlan(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_plan(1), std::invalid_argument);

  const WiringPlan plan = build_plan(4);
  CHECK_THROWS_AS(plan.wavelength(NodeId{0}, NodeId{0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(plan.wavelength(NodeId{0}, NodeId{4}), std::out_of_range);
  CHECK_THROWS_AS(route(plan, NodeId{9}, WavelengthId{1}), std::out_of_range);
  CHECK_FALSE(route(plan, NodeId{0}, WavelengthId{17}).has_value());

  WiringPlan partial(3, 3);
  CHECK_THROWS_AS(partial.wavelength(NodeId{0}, NodeId{1}), std::out_of_range);
  CHECK_FALSE(partial.has(NodeId{0}, NodeId{1}));
  CHECK_FALSE(partial.has(NodeId{0}, NodeId{0}));
}
