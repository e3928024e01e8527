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

#include "qrouter/transport.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <unordered_map>

namespace qrouter {

namespace {

void check_channel(const MuxSpec& spec, int channel) {
  if (channel < 1 || channel > spec.channel_count) {
    throw std::out_of_range("channel outside [1, " +
                            std::to_string(spec.channel_count) + "]");
  }
}

// Cumulative form of a PassDistribution for O(log N) sampling.
struct ChannelSampler {
  int channel = 0;
  double deliver = 0.0;
  std::vector<double> cum;  // cum[j-1] = deliver + sum of leak[0..j-1]
};

ChannelSampler make_sampler(const MuxSpec& spec, int channel) {
  const PassDistribution dist = pass_distribution(spec, channel);
  ChannelSampler s;
  s.channel = channel;
  s.deliver = dist.deliver;
  s.cum.resize(dist.leak.size());
  double acc = dist.deliver;
  for (std::size_t j = 0; j < dist.leak.size(); ++j) {
    acc += dist.leak[j];
    s.cum[j] = acc;
  }
  return s;
}

PassOutcome sample_from(const ChannelSampler& s, double u) {
  if (u < s.deliver) return {PassKind::kDelivered, 0};
  const auto it = std::upper_bound(s.cum.begin(), s.cum.end(), u);
  if (it == s.cum.end()) return {PassKind::kLost, 0};
  const int port = static_cast<int>(it - s.cum.begin()) + 1;
  return {PassKind::kLeaked, port - s.channel};
}

}  // namespace

PassDistribution pass_distribution(const MuxSpec& spec, int channel) {
  check_channel(spec, channel);
  PassDistribution dist;
  dist.channel = channel;
  dist.deliver = db_to_ratio(spec.insertion_loss_db).value;
  dist.leak.assign(static_cast<std::size_t>(spec.channel_count), 0.0);
  double total = dist.deliver;
  for (int j = 1; j <= spec.channel_count; ++j) {
    if (j == channel) continue;
    const double p = std::pow(
        10.0, (spec.crosstalk_db(channel, j) - spec.insertion_loss_db) / 10.0);
    dist.leak[j - 1] = p;
    total += p;
  }
  dist.lost = 1.0 - total;
  if (dist.lost < 0.0) {
    throw UnphysicalSpecError(
        "per-pass outcome probabilities on channel " + std::to_string(channel) +
        " sum to " + std::to_string(total) + " > 1");
  }
  return dist;
}

PassOutcome sample_pass(const PassDistribution& dist, double u) {
  if (u < dist.deliver) return {PassKind::kDelivered, 0};
  double acc = dist.deliver;
  for (std::size_t j = 0; j < dist.leak.size(); ++j) {
    acc += dist.leak[j];
    if (u < acc) {
      return {PassKind::kLeaked, static_cast<int>(j) + 1 - dist.channel};
    }
  }
  return {PassKind::kLost, 0};
}

PassOutcome simulate_pass(const MuxSpec& spec, int channel, PhiloxStream& rng) {
  return sample_pass(pass_distribution(spec, channel), rng.next_double());
}

int SimConfig::resolved_signal_channel() const {
  return signal_channel > 0 ? signal_channel
                            : mid_band_channel(spec.channel_count);
}

std::uint64_t Tallies::leaked_total() const {
  std::uint64_t total = 0;
  for (const auto& [offset, count] : leaked) total += count;
  return total;
}

Tallies run_trials(const SimConfig& config, std::uint64_t first,
                   std::uint64_t last) {
  const int origin = config.resolved_signal_channel();
  check_channel(config.spec, origin);
  if (config.passes < 0) {
    throw std::invalid_argument("passes must be >= 0");
  }

  Tallies t;
  t.trials = last - first;
  std::unordered_map<int, ChannelSampler> samplers;
  const auto sampler_for = [&](int channel) -> const ChannelSampler& {
    auto it = samplers.find(channel);
    if (it == samplers.end()) {
      it = samplers.emplace(channel, make_sampler(config.spec, channel)).first;
    }
    return it->second;
  };

  for (std::uint64_t trial = first; trial < last; ++trial) {
    PhiloxStream rng(config.seed, trial);
    int channel = origin;
    bool alive = true;
    bool every_pass_delivered = true;
    bool every_pass_same_leak = config.passes > 0;
    int first_offset = 0;

    for (int pass = 0; pass < config.passes && alive; ++pass) {
      const PassOutcome out = sample_from(sampler_for(channel),
                                          rng.next_double());
      switch (out.kind) {
        case PassKind::kDelivered:
          every_pass_same_leak = false;
          break;
        case PassKind::kLeaked:
          every_pass_delivered = false;
          if (pass == 0) {
            first_offset = out.offset;
          } else if (out.offset != first_offset) {
            every_pass_same_leak = false;
          }
          channel += out.offset;
          break;
        case PassKind::kLost:
          alive = false;
          every_pass_delivered = false;
          every_pass_same_leak = false;
          break;
      }
    }

    if (!alive) {
      ++t.lost;
      continue;
    }
    if (channel == origin) {
      ++t.delivered;
      if (every_pass_delivered) ++t.clean_delivered;
    } else {
      ++t.leaked[channel - origin];
    }
    if (every_pass_same_leak && first_offset != 0) {
      ++t.repeated_leak[first_offset];
    }
  }
  return t;
}

Tallies merge_tallies(Tallies a, const Tallies& b) {
  a.trials += b.trials;
  a.delivered += b.delivered;
  a.clean_delivered += b.clean_delivered;
  a.lost += b.lost;
  for (const auto& [offset, count] : b.leaked) a.leaked[offset] += count;
  for (const auto& [offset, count] : b.repeated_leak) {
    a.repeated_leak[offset] += count;
  }
  return a;
}

TransitExpectation exact_transit(const MuxSpec& spec, int passes,
                                 int signal_channel) {
  check_channel(spec, signal_channel);
  if (passes < 0) {
    throw std::invalid_argument("passes must be >= 0");
  }
  const int n = spec.channel_count;

  TransitExpectation expectation;
  std::vector<double> alive(static_cast<std::size_t>(n) + 1, 0.0);
  alive[signal_channel] = 1.0;
  double lost = 0.0;
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    for (int c = 1; c <= n; ++c) {
      if (alive[c] == 0.0) continue;
      const PassDistribution dist = pass_distribution(spec, c);
      next[c] += alive[c] * dist.deliver;
      for (int j = 1; j <= n; ++j) {
        if (dist.leak[j - 1] > 0.0) next[j] += alive[c] * dist.leak[j - 1];
      }
      lost += alive[c] * dist.lost;
    }
    alive.swap(next);
  }

  expectation.delivered = alive[signal_channel];
  expectation.lost = lost;
  for (int c = 1; c <= n; ++c) {
    if (c != signal_channel && alive[c] > 0.0) {
      expectation.leaked[c - signal_channel] = alive[c];
    }
  }
  expectation.clean_delivered =
      std::pow(db_to_ratio(spec.insertion_loss_db).value, passes);

  if (passes > 0) {
    for (int offset = -(n - 1); offset <= n - 1; ++offset) {
      if (offset == 0) continue;
      double mass = 1.0;
      int c = signal_channel;
      bool in_band = true;
      for (int pass = 0; pass < passes; ++pass) {
        const int target = c + offset;
        if (target < 1 || target > n) {
          in_band = false;
          break;
        }
        mass *= pass_distribution(spec, c).leak[target - 1];
        c = target;
      }
      if (in_band && mass > 0.0) expectation.repeated_leak[offset] = mass;
    }
  }
  return expectation;
}

TallyStat tally_stat(std::uint64_t count, std::uint64_t trials) {
  TallyStat s;
  s.count = count;
  if (trials == 0) return s;
  const double p = static_cast<double>(count) / static_cast<double>(trials);
  s.fraction = p;
  s.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return s;
}

SimReport simulate_router_transit(const SimConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  const int origin = config.resolved_signal_channel();

  SimReport report;
  report.generator = PhiloxStream::kGeneratorId;
  report.seed = config.seed;
  report.trials = config.trials;
  report.passes = config.passes;
  report.signal_channel = origin;
  report.spec = config.spec;
  // Computed first: it walks every reachable channel, so an unphysical spec
  // fails here rather than inside a worker thread.
  report.expected = exact_transit(config.spec, config.passes, origin);

  unsigned workers = config.workers > 0
                         ? static_cast<unsigned>(config.workers)
                         : std::min(std::thread::hardware_concurrency(), 8u);
  if (workers < 1) workers = 1;
  const std::uint64_t per_worker =
      std::max<std::uint64_t>(1, (config.trials + workers - 1) / workers);

  std::vector<Tallies> partials(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = std::min<std::uint64_t>(
        config.trials, static_cast<std::uint64_t>(w) * per_worker);
    const std::uint64_t last =
        std::min<std::uint64_t>(config.trials, first + per_worker);
    threads.emplace_back([&, w, first, last] {
      try {
        partials[w] = run_trials(config, first, last);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  Tallies total;
  for (const auto& part : partials) total = merge_tallies(total, part);
  report.tallies = total;
  return report;
}

bool z_within(double z, double threshold) {
  return std::isfinite(z) && std::abs(z) < threshold;
}

ComparisonVerdict compare_to_analytic(const SimReport& report,
                                      double threshold_sigma) {
  ComparisonVerdict verdict;
  verdict.threshold_sigma = threshold_sigma;

  const double n = static_cast<double>(report.trials);
  const auto add = [&](const std::string& name, std::uint64_t count,
                       double expected_p) {
    const double observed = n > 0 ? static_cast<double>(count) / n : 0.0;
    const double se = std::sqrt(expected_p * (1.0 - expected_p) / n);
    double z = 0.0;
    if (se > 0.0) {
      z = (observed - expected_p) / se;
    } else if (observed != expected_p) {
      z = std::numeric_limits<double>::infinity();
    }
    verdict.scores.push_back({name, observed, expected_p, z});
  };

  add("delivered", report.tallies.delivered, report.expected.delivered);
  add("clean_delivered", report.tallies.clean_delivered,
      report.expected.clean_delivered);
  add("lost", report.tallies.lost, report.expected.lost);

  // Union of offsets over both sides; thin offsets are pooled so the normal
  // approximation behind the z-score stays honest.
  constexpr double kMinExpectedCount = 10.0;
  std::map<int, std::pair<std::uint64_t, double>> by_offset;
  for (const auto& [offset, count] : report.tallies.leaked) {
    by_offset[offset].first = count;
  }
  for (const auto& [offset, p] : report.expected.leaked) {
    by_offset[offset].second = p;
  }
  std::uint64_t rest_count = 0;
  double rest_p = 0.0;
  for (const auto& [offset, cp] : by_offset) {
    if (cp.second * n >= kMinExpectedCount) {
      add("leaked[" + std::to_string(offset) + "]", cp.first, cp.second);
    } else {
      rest_count += cp.first;
      rest_p += cp.second;
    }
  }
  if (rest_count > 0 || rest_p > 0.0) {
    add("leaked[rest]", rest_count, rest_p);
  }

  verdict.pass = true;
  for (const auto& score : verdict.scores) {
    if (!z_within(score.z, threshold_sigma)) verdict.pass = false;
  }
  return verdict;
}

}  // namespace qrouter
