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

#ifndef QROUTER_TRANSPORT_HPP
#define QROUTER_TRANSPORT_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrouter/philox.hpp"
#include "qrouter/photonics.hpp"

namespace qrouter {

/// Thrown when a spec's per-pass outcome probabilities exceed unit mass
/// (e.g. positive crosstalk over many channels). A passive device cannot
/// emit more photons than it receives.
struct UnphysicalSpecError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class PassKind { kDelivered, kLeaked, kLost };

/// What happened to one photon at one MUX: delivered out its own port,
/// leaked to the port `offset` channels away, or absorbed.
struct PassOutcome {
  PassKind kind = PassKind::kLost;
  int offset = 0;  // nonzero iff kind == kLeaked
};

/// Outcome distribution for a photon on `channel` crossing one MUX:
/// deliver = 10^(-IL/10), leak[j-1] = 10^((FC_j - IL)/10) per in-band port
/// j != channel, lost = the remaining mass.
struct PassDistribution {
  int channel = 0;
  double deliver = 0.0;
  std::vector<double> leak;
  double lost = 0.0;
};

/// Throws UnphysicalSpecError when deliver + sum(leak) > 1.
PassDistribution pass_distribution(const MuxSpec& spec, int channel);

/// Deterministic core of the sampler: maps a uniform u in [0,1) onto an
/// outcome (delivered first, then leak buckets in channel order, then lost).
PassOutcome sample_pass(const PassDistribution& dist, double u);

PassOutcome simulate_pass(const MuxSpec& spec, int channel, PhiloxStream& rng);

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  MuxSpec spec;
  int passes = 2;           // a router transit crosses two MUXs
  int signal_channel = 0;   // 0 = mid-band default
  int workers = 0;          // 0 = one per hardware thread (capped at 8)
  double sigma_threshold = 4.0;

  int resolved_signal_channel() const;
};

/// Integer counts, partitioned by the photon's terminal state. Exact merges:
/// running disjoint trial ranges and summing gives bit-identical totals.
struct Tallies {
  std::uint64_t trials = 0;
  std::uint64_t delivered = 0;        // exited on the original channel
  std::uint64_t clean_delivered = 0;  // and was delivered at every pass
  std::uint64_t lost = 0;
  std::map<int, std::uint64_t> leaked;         // by final exit offset
  std::map<int, std::uint64_t> repeated_leak;  // leaked the same offset at every pass

  std::uint64_t leaked_total() const;
};

/// Runs trial indices [first, last). Each trial draws from its own
/// counter-based stream keyed by (seed, trial), so any partition of the
/// index range reproduces the single-worker result exactly.
Tallies run_trials(const SimConfig& config, std::uint64_t first,
                   std::uint64_t last);

Tallies merge_tallies(Tallies a, const Tallies& b);

/// Exact terminal-state distribution of a transit, obtained by propagating
/// the full per-pass outcome probabilities instead of sampling them (a
/// zero-variance weighted tally: every path contributes its exact
/// probability). This is the analytic reference the sampler is checked
/// against.
struct TransitExpectation {
  double delivered = 0.0;
  double lost = 0.0;
  std::map<int, double> leaked;  // by final exit offset
  /// Probability of being delivered at every pass, deliver^passes.
  double clean_delivered = 0.0;
  /// Mass of the paths that leak the same signed offset at every pass.
  /// repeated_leak[o] / clean_delivered is the two-pass leak-to-signal
  /// ratio 10^(2*FC/10) when passes = 2 and the path stays in band.
  std::map<int, double> repeated_leak;
};

TransitExpectation exact_transit(const MuxSpec& spec, int passes,
                                 int signal_channel);

struct TallyStat {
  std::uint64_t count = 0;
  double fraction = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/trials) with p the empirical fraction
};

TallyStat tally_stat(std::uint64_t count, std::uint64_t trials);

struct SimReport {
  std::string generator;  // algorithm identifier of the RNG
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int passes = 0;
  int signal_channel = 0;
  MuxSpec spec;
  Tallies tallies;
  TransitExpectation expected;
};

/// Runs `trials` photons through `passes` MUX passes, fanning out over
/// worker threads. The report depends only on the config, never on the
/// worker count.
SimReport simulate_router_transit(const SimConfig& config);

struct TallyZ {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double z = 0.0;
};

struct ComparisonVerdict {
  double threshold_sigma = 4.0;
  bool pass = false;
  std::vector<TallyZ> scores;
};

/// Strict test: |z| < threshold passes, a tie fails.
bool z_within(double z, double threshold);

/// Z-scores every tally against the exact expectation (null-hypothesis
/// standard errors). Offsets whose expected count falls below ~10 are
/// aggregated into one remainder tally to keep the z approximation sound.
ComparisonVerdict compare_to_analytic(const SimReport& report,
                                      double threshold_sigma = 4.0);

}  // namespace qrouter

#endif  // QROUTER_TRANSPORT_HPP
