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

#include "qrouter/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qrouter {

double MuxSpec::crosstalk_db(int signal_channel, int interferer) const {
  if (signal_channel < 1 || signal_channel > channel_count ||
      interferer < 1 || interferer > channel_count) {
    throw std::out_of_range("channel outside [1, " +
                            std::to_string(channel_count) + "]");
  }
  if (signal_channel == interferer) {
    throw std::invalid_argument("crosstalk is defined between distinct channels");
  }
  if (has_matrix()) {
    return crosstalk_matrix_db[signal_channel - 1][interferer - 1];
  }
  return std::abs(signal_channel - interferer) == 1 ? adjacent_crosstalk_db
                                                    : nonadjacent_crosstalk_db;
}

void MuxSpec::validate() const {
  if (channel_count < 2) {
    throw std::invalid_argument("mux needs at least 2 channels");
  }
  if (!(insertion_loss_db >= 0.0)) {
    throw std::invalid_argument("insertion loss must be >= 0 dB");
  }
  if (!(adjacent_crosstalk_db < 0.0) || !(nonadjacent_crosstalk_db < 0.0)) {
    throw std::invalid_argument("crosstalk figures must be strictly negative");
  }
  if (adjacent_crosstalk_db < nonadjacent_crosstalk_db) {
    throw std::invalid_argument(
        "adjacent crosstalk must not be weaker than non-adjacent");
  }
  if (has_matrix()) {
    const auto n = static_cast<std::size_t>(channel_count);
    if (crosstalk_matrix_db.size() != n) {
      throw std::invalid_argument("crosstalk matrix must be NxN");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (crosstalk_matrix_db[i].size() != n) {
        throw std::invalid_argument("crosstalk matrix must be NxN");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && !(crosstalk_matrix_db[i][j] < 0.0)) {
          throw std::invalid_argument(
              "crosstalk matrix entries must be strictly negative");
        }
      }
    }
  }
}

int mid_band_channel(int channel_count) {
  if (channel_count < 1) {
    throw std::invalid_argument("channel count must be positive");
  }
  return (channel_count + 1) / 2;
}

TransmissionRatio db_to_ratio(double db) {
  return {std::pow(10.0, -db / 10.0)};
}

TransmissionRatio leak_ratio_per_pass(const MuxSpec& spec, int offset) {
  if (offset == 0) {
    throw std::invalid_argument(
        "offset 0 is the signal path, not a leak; use db_to_ratio(IL)");
  }
  const double fc = std::abs(offset) == 1 ? spec.adjacent_crosstalk_db
                                          : spec.nonadjacent_crosstalk_db;
  return {std::pow(10.0, (fc - spec.insertion_loss_db) / 10.0)};
}

double router_insertion_loss_db(const MuxSpec& spec) {
  return 2.0 * spec.insertion_loss_db;
}

double two_pass_crosstalk_ratio(const MuxSpec& spec, int offset) {
  if (offset == 0) {
    throw std::invalid_argument(
        "offset 0 is the signal path, not a leak");
  }
  const double fc = std::abs(offset) == 1 ? spec.adjacent_crosstalk_db
                                          : spec.nonadjacent_crosstalk_db;
  return std::pow(10.0, 2.0 * fc / 10.0);
}

CrosstalkAssessment worst_case_crosstalk_sum(const MuxSpec& spec,
                                             double pre_router_loss_db,
                                             int signal_channel) {
  const int n = spec.channel_count;
  if (signal_channel < 1 || signal_channel > n) {
    throw std::out_of_range("signal channel outside [1, " +
                            std::to_string(n) + "]");
  }
  if (!(pre_router_loss_db >= 0.0)) {
    throw std::invalid_argument("pre-router loss must be >= 0 dB");
  }

  CrosstalkAssessment out;
  out.signal_channel = signal_channel;
  out.pre_router_loss_db = pre_router_loss_db;
  out.interferer_count = n - 1;

  const auto term = [&](double fc_db) {
    return std::pow(10.0, (pre_router_loss_db + 2.0 * fc_db) / 10.0);
  };

  if (spec.has_matrix()) {
    // Interfering channel j leaks into the signal's port, so the figure is
    // row j of the matrix, not the signal's own row.
    for (int j = 1; j <= n; ++j) {
      if (j == signal_channel) continue;
      const double t = term(spec.crosstalk_db(j, signal_channel));
      out.worst_case_sum += t;
      if (j < n) out.truncated_sum += t;
      if (t > out.per_channel_ratio) out.per_channel_ratio = t;
    }
  } else {
    // Counting form for the two-valued model: band-edge signals have one
    // adjacent neighbor, everything else two.
    const int adjacent = (signal_channel > 1 ? 1 : 0) +
                         (signal_channel < n ? 1 : 0);
    const int nonadjacent = (n - 1) - adjacent;
    const double t_adj = term(spec.adjacent_crosstalk_db);
    const double t_non = term(spec.nonadjacent_crosstalk_db);
    out.worst_case_sum = adjacent * t_adj + nonadjacent * t_non;
    // Dropping channel n removes one interferer: an adjacent one when the
    // signal sits at n-1, otherwise (or for a channel-n signal, nothing)
    // a non-adjacent one.
    if (signal_channel == n) {
      out.truncated_sum = out.worst_case_sum;
    } else if (signal_channel == n - 1) {
      out.truncated_sum = out.worst_case_sum - t_adj;
    } else {
      out.truncated_sum = out.worst_case_sum - t_non;
    }
    out.per_channel_ratio = std::max(adjacent > 0 ? t_adj : 0.0,
                                     nonadjacent > 0 ? t_non : 0.0);
  }
  return out;
}

}  // namespace qrouter
