// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace gfurllc {

/// Philox4x32-10 counter-based block generator. A 128-bit counter and a
/// 64-bit key map to four statistically independent 32-bit words, so any
/// (seed, slot, lane, purpose) tuple owns its own stream and parallel
/// workers can consume slots in any order without touching each other's
/// sample paths.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0)};
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// Stream purposes; part of the counter so no two uses ever share samples.
enum class StreamPurpose : std::uint32_t {
  placement = 1,  // campaign-level UE placement
  arrival = 2,    // per-slot Bernoulli arrivals
  access = 3,     // per-round access coin flips (lane = round)
  channel = 4,    // per-round fading draws, IID mode (lane = round)
  channel_cor = 5 // per-slot per-UE fading draws, COR mode (lane = UE index)
};

/// Deterministic sample stream for one (seed, slot, lane, purpose) tuple.
/// Cheap to construct; keeps a 4-word buffer plus a spare Box-Muller normal.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t slot, std::uint32_t lane, StreamPurpose purpose)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        base_{static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(slot >> 32),
              (static_cast<std::uint32_t>(purpose) << 24) | (lane & 0x00FFFFFFu), 0} {
    if (lane > 0x00FFFFFFu) throw std::domain_error("RngStream: lane exceeds 24 bits");
  }

  std::uint32_t next_u32() {
    if (idx_ == 4) refill();
    return buf_[idx_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform double strictly inside (0,1): 53-bit mantissa, half-ulp offset.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; second value of each pair is cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circularly-symmetric complex Gaussian with unit total variance.
  std::complex<double> next_cgauss() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-std::log(u1));  // includes the 1/sqrt(2) scaling
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  void refill() {
    auto ctr = base_;
    ctr[3] = block_;
    buf_ = Philox4x32::block(ctr, key_);
    ++block_;
    idx_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int idx_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gfurllc
