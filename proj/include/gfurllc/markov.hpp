// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "gfurllc/config.hpp"
#include "gfurllc/outage.hpp"

namespace gfurllc {

/// Absorbing Markov chain over the number of UEs that have transmitted
/// successfully within the slot, given n contenders at slot start.
/// States 0..n-1 are transient, state n (everyone served) absorbs. Stored in
/// canonical form: the transient block Q (n x n, row-major) plus the column
/// y of transient-to-absorbing probabilities.
///
/// Structure: a state can only gain between 0 and M successes per round, so
/// q[i][j] = 0 unless i <= j <= i+M, and y[i] = 0 unless n-i <= M.
struct AbsorbingChain {
  int n = 0;
  int k_max = 0;               // allowed jumps K within the delay bound
  std::vector<double> q;       // n*n, row-major transient block
  std::vector<double> y;       // n, transient -> absorbing

  double q_at(int i, int j) const { return q[static_cast<std::size_t>(i) * n + j]; }
};

/// Absorption statistics of one chain within its jump budget K.
struct AbsorptionStats {
  double lambda = 0.0;                  // P(absorbed within K jumps)
  std::vector<double> absorb_by_jump;   // [k] = P(first absorption at jump k+1), size K
  std::vector<double> residual_dist;    // [(Q^K)]_{1,i+1} over transient states, size n
  double expected_rounds = 0.0;         // mean rounds served, capped at K
};

/// Probability that `count` of `n_tx` simultaneous transmitters decode:
/// C(n_tx,count) (1-rho)^count rho^(n_tx-count) with rho = table(n_tx).
double trans_success(int count, int n_tx, const OutageTable& table);

/// Probability that `n_tx` of `residual` contenders transmit, each with the
/// adaptive access probability f_p = min{M/(residual+1), 1}.
double trans_attempt(int n_tx, int residual, const SystemConfig& cfg);

/// Builds the chain for initial contention level n. Off-diagonal entries
/// marginalize the transmitter count over the access law (collapsing to the
/// pure success pmf when f_p = 1); diagonals close each row to 1; everything
/// outside the i..i+M band is structurally zero.
AbsorbingChain build_chain(int n, const SystemConfig& cfg, const OutageTable& table);

/// Absorption statistics via iterated vector-matrix products; no matrix is
/// ever inverted or decomposed.
AbsorptionStats absorption_stats(const AbsorbingChain& chain);

/// Expected number of transmitting UEs accumulated over the K rounds,
/// weighting each residual level by its occupation probability:
///   n f_p(n) + sum_{k=1..K-1} sum_i [(Q)^k]_{1,i+1} (n-i) f_p(n-i).
/// This is the UE-side activity factor of the average-power expansion.
double expected_transmit_activity(const AbsorbingChain& chain, const SystemConfig& cfg);

}  // namespace gfurllc
