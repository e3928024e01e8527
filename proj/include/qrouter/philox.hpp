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

#ifndef QROUTER_PHILOX_HPP
#define QROUTER_PHILOX_HPP

#include <array>
#include <cstdint>

namespace qrouter {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Purely a
// function of (counter, key), which is what makes per-trial streams cheap
// and order-independent.
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 =
          static_cast<std::uint64_t>(kMult0) * counter[0];
      const std::uint64_t p1 =
          static_cast<std::uint64_t>(kMult1) * counter[2];
      counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                 static_cast<std::uint32_t>(p0)};
    }
    return counter;
  }
};

/// One independent uniform stream per (seed, stream) pair. The draw index
/// is part of the counter, so the k-th draw of stream s under seed q is the
/// same number no matter which worker asks for it or in what order.
class PhiloxStream {
 public:
  static constexpr const char* kGeneratorId = "philox4x32-10";

  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint64_t next_u64() {
    const Philox4x32::Block out = Philox4x32::generate(
        {static_cast<std::uint32_t>(draw_),
         static_cast<std::uint32_t>(draw_ >> 32), stream_lo_, stream_hi_},
        key_);
    ++draw_;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t draw_ = 0;
};

}  // namespace qrouter

#endif  // QROUTER_PHILOX_HPP
