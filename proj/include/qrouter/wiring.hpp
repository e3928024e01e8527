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

#ifndef QROUTER_WIRING_HPP
#define QROUTER_WIRING_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace qrouter {

/// Zero-based index of a multiplexer (equivalently, of the user port it
/// serves). Rendered as spreadsheet-style letters: 0 -> "A", 25 -> "Z",
/// 26 -> "AA".
struct NodeId {
  int index = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// One-based abstract wavelength label. Mapping labels to physical grid
/// frequencies is outside this library's scope.
struct WavelengthId {
  int channel = 0;
  friend auto operator<=>(const WavelengthId&, const WavelengthId&) = default;
};

std::string node_label(NodeId id);
std::optional<NodeId> node_from_label(const std::string& label);

enum class ViolationKind {
  kDuplicateAtVertex,  // two links at one MUX carry the same wavelength
  kAsymmetry,          // table(u,v) != table(v,u)
  kMissingPair,        // an unordered pair has no wavelength
  kBadColorRange,      // entry outside [1, colors], or colors breaks the parity law
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<NodeId> nodes;
  std::string detail;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Symmetric wavelength-assignment table wiring n multiplexers into an
/// n-port star router. Cell (u, v) holds the wavelength of the u<->v
/// internal fiber; the diagonal is undefined (a MUX has no link to itself).
///
/// Plans are plain values: build one (or load one), then treat it as
/// immutable. Every query is const and safe under concurrent readers.
class WiringPlan {
 public:
  WiringPlan(int n_nodes, int color_count);

  int node_count() const { return n_; }
  int color_count() const { return colors_; }

  /// True when the pair is off-diagonal, in range, and assigned.
  bool has(NodeId u, NodeId v) const;

  /// Wavelength of the u<->v link. Throws std::invalid_argument on the
  /// diagonal and std::out_of_range for bad indices or unassigned pairs.
  WavelengthId wavelength(NodeId u, NodeId v) const;

  /// Assigns both directions at once (the normal way to fill a plan).
  void assign(NodeId u, NodeId v, WavelengthId w);

  /// Assigns a single direction. Exists so that loaders and tests can
  /// represent malformed tables for verify_plan to report on.
  void assign_one_way(NodeId u, NodeId v, WavelengthId w);

  /// Raw cell value with 0 meaning "unassigned". No diagonal check.
  int raw_cell(NodeId u, NodeId v) const;

 private:
  void check_nodes(NodeId u, NodeId v) const;

  int n_;
  int colors_;
  std::vector<int> cells_;  // row-major n*n, 0 = unassigned
};

/// Chromatic index of the complete graph K_n: n-1 colors when n is even,
/// n when n is odd.
int expected_color_count(int n);

/// Demultiplexing ports each MUX needs to realize an n-node plan: n-1 when
/// n is even, n when n is odd (one port per MUX idles in the odd case).
int demux_port_count(int n);

/// Builds the canonical n-node wiring plan.
///
/// Odd n: table(u,v) = ((u+v) mod n) + 1. Even n: nodes 0..n-2 follow the
/// odd rule with modulus n-1, and the last node takes each node's spare
/// diagonal color, table(u, n-1) = ((2u) mod (n-1)) + 1. The result is a
/// proper edge coloring of K_n with exactly expected_color_count(n) colors.
WiringPlan build_plan(int n);

/// Exhaustively checks every invariant of a plan: symmetry, pair coverage,
/// per-vertex distinctness, color range, and the color-count parity law.
/// Independent of how the plan was produced; malformed plans yield
/// violations, never exceptions.
VerificationReport verify_plan(const WiringPlan& plan);

/// The node reached from `ingress` on wavelength `w`, or nullopt when no
/// link at the ingress carries it (each vertex of an odd-n plan has one
/// such idle wavelength; out-of-range wavelengths also map to nullopt).
std::optional<NodeId> route(const WiringPlan& plan, NodeId ingress,
                            WavelengthId w);

/// Wavelength connecting u and v. Inverse of route: for a valid plan,
/// route(plan, u, wavelength_for(plan, u, v)) == v.
WavelengthId wavelength_for(const WiringPlan& plan, NodeId u, NodeId v);

}  // namespace qrouter

#endif  // QROUTER_WIRING_HPP
