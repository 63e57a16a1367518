// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "gfurllc/config.hpp"

namespace gfurllc {

/// Inputs of the normal-approximation achievable rate.
struct RateParams {
  double snr = 0.0;           // post-processing SNR (linear)
  double channel_uses = 0.0;  // tau * B
  double bler = 1e-5;         // target block error rate
  double bandwidth_hz = 0.0;  // B
};

/// Channel dispersion V = 1 - 1/(1+snr)^2, computed as snr(snr+2)/(1+snr)^2
/// to stay accurate for small snr.
double channel_dispersion(double snr);

/// Maximal achievable rate [bits/s] in the finite-blocklength regime:
///   B * max{ log2(1+snr) - sqrt(V * log2(e) / (tau*B)) * invQ(bler), 0 }.
double achievable_rate_bps(const RateParams& params);

/// Hot-path variant with the inverse-Q value precomputed by the caller.
double achievable_rate_bps(double snr, double channel_uses, double bandwidth_hz,
                           double inv_q_bler);

/// Rate threshold exponent used by the closed-form outage probability:
///   Omega = sqrt(log2(e)/(tau*B)) * invQ(bler) + beta/(tau*B),
/// so that (under unit dispersion) an SNR below 2^Omega - 1 cannot carry
/// beta bits in one S-TTI.
double threshold_exponent(const SystemConfig& cfg);

}  // namespace gfurllc
