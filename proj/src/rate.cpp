// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/rate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gfurllc/special.hpp"

namespace gfurllc {

double channel_dispersion(double snr) {
  if (snr < 0.0) throw std::domain_error("channel_dispersion: snr must be nonnegative");
  const double g1 = 1.0 + snr;
  return snr * (snr + 2.0) / (g1 * g1);
}

double achievable_rate_bps(double snr, double channel_uses, double bandwidth_hz,
                           double inv_q_bler) {
  const double v = channel_dispersion(snr);
  const double capacity = std::log1p(snr) * std::numbers::log2e;
  const double penalty = std::sqrt(v * std::numbers::log2e / channel_uses) * inv_q_bler;
  const double r = capacity - penalty;
  return bandwidth_hz * (r > 0.0 ? r : 0.0);
}

double achievable_rate_bps(const RateParams& params) {
  if (params.snr < 0.0) throw std::domain_error("achievable_rate: snr must be nonnegative");
  if (!(params.channel_uses > 0.0)) {
    throw std::domain_error("achievable_rate: channel_uses must be positive");
  }
  if (!(params.bler > 0.0 && params.bler < 1.0)) {
    throw std::domain_error("achievable_rate: bler must lie in (0,1)");
  }
  return achievable_rate_bps(params.snr, params.channel_uses, params.bandwidth_hz,
                             inv_q(params.bler));
}

double threshold_exponent(const SystemConfig& cfg) {
  const double n = cfg.channel_uses();
  return std::sqrt(std::numbers::log2e / n) * inv_q(cfg.bler_target) +
         static_cast<double>(cfg.packet_bits) / n;
}

}  // namespace gfurllc
