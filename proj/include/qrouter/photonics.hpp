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

#ifndef QROUTER_PHOTONICS_HPP
#define QROUTER_PHOTONICS_HPP

#include <vector>

namespace qrouter {

/// Dimensionless probability ratio, 10^(-dB/10) of some dB figure. Stays in
/// [0, 1] for physical inputs (losses >= 0 dB, crosstalk <= 0 dB).
struct TransmissionRatio {
  double value = 0.0;
};

/// Optical parameters of one wavelength multiplexer.
///
/// Crosstalk is two-valued by default: one figure for adjacent channels
/// (j = i +- 1) and one for everything else. Real device data can override
/// that with a full per-pair matrix, crosstalk_matrix_db[i-1][j-1] = leakage
/// of channel i into port j in dB; the diagonal is ignored.
struct MuxSpec {
  int channel_count = 40;
  double insertion_loss_db = 5.0;
  double adjacent_crosstalk_db = -25.0;
  double nonadjacent_crosstalk_db = -30.0;
  std::vector<std::vector<double>> crosstalk_matrix_db;

  bool has_matrix() const { return !crosstalk_matrix_db.empty(); }

  /// Crosstalk figure (dB) for a channel-i signal exporting from port j.
  double crosstalk_db(int signal_channel, int interferer) const;

  /// Throws std::invalid_argument on any violated invariant: channel count
  /// >= 2, insertion loss >= 0, crosstalk figures strictly negative with
  /// adjacent >= non-adjacent, matrix (if present) square of the right size.
  void validate() const;
};

/// Center channel of an n-channel grid, the default signal position for
/// worst-case analyses (it sees two adjacent interferers).
int mid_band_channel(int channel_count);

/// 10^(-db/10). Accepts any real; no clamping.
TransmissionRatio db_to_ratio(double db);

/// Per-pass probability that a photon leaks to the port `offset` channels
/// away instead of its own: 10^((FC - IL)/10), FC chosen by adjacency.
/// offset = 0 is the signal path, not a leak; it throws.
TransmissionRatio leak_ratio_per_pass(const MuxSpec& spec, int offset);

/// Loss of a full router transit. A photon crosses two MUXs, so this is
/// simply twice the per-device insertion loss.
double router_insertion_loss_db(const MuxSpec& spec);

/// Leak-to-signal ratio after both passes, 10^(2*FC/10). The insertion loss
/// cancels exactly: both the leaked and the clean photon pay it twice.
double two_pass_crosstalk_ratio(const MuxSpec& spec, int offset);

struct CrosstalkAssessment {
  int signal_channel = 0;
  double pre_router_loss_db = 0.0;  // X, the sender-side fiber loss
  int interferer_count = 0;         // channel_count - 1
  double per_channel_ratio = 0.0;   // largest single-interferer term
  double worst_case_sum = 0.0;      // sum over all interfering channels
  double truncated_sum = 0.0;       // same sum restricted to channels < N
};

/// Worst-case aggregate crosstalk: interfering photons enter the router
/// clean while the signal first crosses a fiber with X dB of loss, so each
/// interfering channel j != i contributes 10^((X + 2*FC_j(i))/10).
///
/// worst_case_sum covers all channel_count-1 interferers (band-edge signal
/// channels see a single adjacent neighbor). truncated_sum drops the top
/// channel, i.e. runs j over [1, channel_count-1]; datasheet-style bounds
/// are often quoted over that shorter range, and at the reference operating
/// point (N=40, FC=-25/-30 dB, X=10 dB) the two evaluate to 0.057% and
/// 0.056% respectively.
CrosstalkAssessment worst_case_crosstalk_sum(const MuxSpec& spec,
                                             double pre_router_loss_db,
                                             int signal_channel);

}  // namespace qrouter

#endif  // QROUTER_PHOTONICS_HPP
