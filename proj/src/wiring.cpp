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

#include "qrouter/wiring.hpp"

#include <cctype>
#include <stdexcept>

namespace qrouter {

std::string node_label(NodeId id) {
  if (id.index < 0) {
    throw std::invalid_argument("node index must be non-negative");
  }
  // Spreadsheet column naming: bijective base 26.
  std::string label;
  int i = id.index;
  while (true) {
    label.insert(label.begin(), static_cast<char>('A' + i % 26));
    i = i / 26 - 1;
    if (i < 0) break;
  }
  return label;
}

std::optional<NodeId> node_from_label(const std::string& label) {
  if (label.empty()) return std::nullopt;
  long long index = 0;
  for (char c : label) {
    if (c < 'A' || c > 'Z') return std::nullopt;
    index = index * 26 + (c - 'A' + 1);
    if (index > 1'000'000) return std::nullopt;
  }
  return NodeId{static_cast<int>(index - 1)};
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateAtVertex:
      return "duplicate-at-vertex";
    case ViolationKind::kAsymmetry:
      return "asymmetry";
    case ViolationKind::kMissingPair:
      return "missing-pair";
    case ViolationKind::kBadColorRange:
      return "bad-color-range";
  }
  return "unknown";
}

WiringPlan::WiringPlan(int n_nodes, int color_count)
    : n_(n_nodes), colors_(color_count) {
  if (n_nodes < 2) {
    throw std::invalid_argument("a wiring plan needs at least 2 nodes");
  }
  if (color_count < 1) {
    throw std::invalid_argument("color count must be positive");
  }
  cells_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

void WiringPlan::check_nodes(NodeId u, NodeId v) const {
  if (u.index < 0 || u.index >= n_ || v.index < 0 || v.index >= n_) {
    throw std::out_of_range("node index outside plan");
  }
}

bool WiringPlan::has(NodeId u, NodeId v) const {
  if (u.index < 0 || u.index >= n_ || v.index < 0 || v.index >= n_) {
    return false;
  }
  if (u == v) return false;
  return cells_[static_cast<std::size_t>(u.index) * n_ + v.index] != 0;
}

WavelengthId WiringPlan::wavelength(NodeId u, NodeId v) const {
  check_nodes(u, v);
  if (u == v) {
    throw std::invalid_argument("no self-link: " + node_label(u));
  }
  int w = cells_[static_cast<std::size_t>(u.index) * n_ + v.index];
  if (w == 0) {
    throw std::out_of_range("no wavelength assigned for pair " +
                            node_label(u) + "," + node_label(v));
  }
  return WavelengthId{w};
}

void WiringPlan::assign(NodeId u, NodeId v, WavelengthId w) {
  assign_one_way(u, v, w);
  assign_one_way(v, u, w);
}

void WiringPlan::assign_one_way(NodeId u, NodeId v, WavelengthId w) {
  check_nodes(u, v);
  if (u == v) {
    throw std::invalid_argument("no self-link: " + node_label(u));
  }
  if (w.channel < 1) {
    throw std::invalid_argument("wavelength channels are 1-based");
  }
  cells_[static_cast<std::size_t>(u.index) * n_ + v.index] = w.channel;
}

int WiringPlan::raw_cell(NodeId u, NodeId v) const {
  check_nodes(u, v);
  return cells_[static_cast<std::size_t>(u.index) * n_ + v.index];
}

int expected_color_count(int n) {
  if (n < 2) {
    throw std::invalid_argument("need at least 2 nodes");
  }
  return (n % 2 == 0) ? n - 1 : n;
}

int demux_port_count(int n) { return expected_color_count(n); }

WiringPlan build_plan(int n) {
  if (n < 2) {
    throw std::invalid_argument("a wiring plan needs at least 2 nodes");
  }
  WiringPlan plan(n, expected_color_count(n));
  if (n % 2 == 1) {
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        plan.assign(NodeId{u}, NodeId{v}, WavelengthId{(u + v) % n + 1});
      }
    }
  } else {
    // The first n-1 nodes form an odd table; the spare diagonal color of
    // each row moves to the last node's column.
    const int m = n - 1;
    for (int u = 0; u < m; ++u) {
      for (int v = u + 1; v < m; ++v) {
        plan.assign(NodeId{u}, NodeId{v}, WavelengthId{(u + v) % m + 1});
      }
      plan.assign(NodeId{u}, NodeId{n - 1}, WavelengthId{(2 * u) % m + 1});
    }
  }
  return plan;
}

VerificationReport verify_plan(const WiringPlan& plan) {
  VerificationReport report;
  const int n = plan.node_count();
  const int declared = plan.color_count();
  const int expected = expected_color_count(n);

  if (declared != expected) {
    report.violations.push_back(
        {ViolationKind::kBadColorRange,
         {},
         "declared color count " + std::to_string(declared) +
             " but an " + std::to_string(n) + "-node plan takes exactly " +
             std::to_string(expected)});
  }

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int forward = plan.raw_cell(NodeId{u}, NodeId{v});
      const int backward = plan.raw_cell(NodeId{v}, NodeId{u});
      if (forward == 0 && backward == 0) {
        report.violations.push_back(
            {ViolationKind::kMissingPair,
             {NodeId{u}, NodeId{v}},
             "pair " + node_label(NodeId{u}) + "," + node_label(NodeId{v}) +
                 " has no wavelength"});
        continue;
      }
      if (forward != backward) {
        report.violations.push_back(
            {ViolationKind::kAsymmetry,
             {NodeId{u}, NodeId{v}},
             "table(" + node_label(NodeId{u}) + "," + node_label(NodeId{v}) +
                 ") = " + std::to_string(forward) + " but table(" +
                 node_label(NodeId{v}) + "," + node_label(NodeId{u}) +
                 ") = " + std::to_string(backward)});
      }
      for (int w : {forward, backward}) {
        if (w != 0 && (w < 1 || w > expected)) {
          report.violations.push_back(
              {ViolationKind::kBadColorRange,
               {NodeId{u}, NodeId{v}},
               "wavelength " + std::to_string(w) + " outside [1, " +
                   std::to_string(expected) + "] on pair " +
                   node_label(NodeId{u}) + "," + node_label(NodeId{v})});
          break;
        }
      }
    }
  }

  // Per-vertex distinctness over whatever is assigned, scanning rows so the
  // check stays meaningful even for asymmetric tables.
  for (int u = 0; u < n; ++u) {
    std::vector<int> first_seen(static_cast<std::size_t>(expected) + 1, -1);
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const int w = plan.raw_cell(NodeId{u}, NodeId{v});
      if (w < 1 || w > expected) continue;
      if (first_seen[w] >= 0) {
        report.violations.push_back(
            {ViolationKind::kDuplicateAtVertex,
             {NodeId{u}},
             "wavelength " + std::to_string(w) + " repeats at " +
                 node_label(NodeId{u}) + " (links to " +
                 node_label(NodeId{first_seen[w]}) + " and " +
                 node_label(NodeId{v}) + ")"});
      } else {
        first_seen[w] = v;
      }
    }
  }

  report.valid = report.violations.empty();
  return report;
}

std::optional<NodeId> route(const WiringPlan& plan, NodeId ingress,
                            WavelengthId w) {
  if (ingress.index < 0 || ingress.index >= plan.node_count()) {
    throw std::out_of_range("ingress node outside plan");
  }
  for (int v = 0; v < plan.node_count(); ++v) {
    if (v == ingress.index) continue;
    if (plan.raw_cell(ingress, NodeId{v}) == w.channel) {
      return NodeId{v};
    }
  }
  return std::nullopt;
}

WavelengthId wavelength_for(const WiringPlan& plan, NodeId u, NodeId v) {
  return plan.wavelength(u, v);
}

}  // namespace qrouter
