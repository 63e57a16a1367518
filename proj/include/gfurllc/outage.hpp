// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "gfurllc/config.hpp"

namespace gfurllc {

/// Conditional outage probabilities rho(N') of one UE when N' UEs transmit
/// simultaneously through the ZF detector, for N' = 1..M. Built once per
/// config, then shared read-only.
struct OutageTable {
  std::vector<double> rho;     // rho[i] = outage prob with N' = i+1 transmitters
  std::uint64_t config_hash = 0;

  int m() const { return static_cast<int>(rho.size()); }
  /// rho(N'), 1-based; throws when n_tx is outside 1..M.
  double operator()(int n_tx) const;
};

/// Closed-form rho(N') for a single transmitter count:
///   P( (M-N'+1) K_rep ,  (N0 B + xi delta^2 N')(2^Omega - 1) / (xi (delta^2+1)) )
/// with P the regularized lower incomplete gamma. Valid for 1 <= n_tx <= M;
/// larger counts are rejected because the ZF gamma shape would vanish.
double outage_prob(const SystemConfig& cfg, int n_tx);

/// Memoizes outage_prob across N' = 1..M. Deterministic per config.
OutageTable build_outage_table(const SystemConfig& cfg);

}  // namespace gfurllc
