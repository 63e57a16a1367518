// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/markov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfurllc/binomial.hpp"

namespace gfurllc {

namespace {

// Kahan-compensated accumulator for the probability sums.
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = x - c;
    const double s = sum + t;
    c = (s - sum) - t;
    sum = s;
  }
};

}  // namespace

double trans_success(int count, int n_tx, const OutageTable& table) {
  if (count < 0 || count > n_tx) {
    throw std::domain_error("trans_success: need 0 <= count <= n_tx");
  }
  const double rho = table(n_tx);  // validates 1 <= n_tx <= M
  return binomial_pmf(count, n_tx, 1.0 - rho);
}

double trans_attempt(int n_tx, int residual, const SystemConfig& cfg) {
  if (residual < 1) throw std::domain_error("trans_attempt: residual must be >= 1");
  if (n_tx < 0 || n_tx > residual) {
    throw std::domain_error("trans_attempt: need 0 <= n_tx <= residual");
  }
  return binomial_pmf(n_tx, residual, access_prob(residual, cfg.n_antennas));
}

AbsorbingChain build_chain(int n, const SystemConfig& cfg, const OutageTable& table) {
  if (n < 1) throw std::domain_error("build_chain: contention level must be >= 1");
  const int m = cfg.n_antennas;

  AbsorbingChain chain;
  chain.n = n;
  chain.k_max = derive_k(cfg);
  chain.q.assign(static_cast<std::size_t>(n) * n, 0.0);
  chain.y.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const int residual = n - i;
    const double fp = access_prob(residual, m);
    Kahan off_diag;
    // Targets j = i+d with 1 <= d <= min(residual, M) gained successes.
    const int d_max = std::min(residual, m);
    for (int d = 1; d <= d_max; ++d) {
      double p;
      if (fp < 1.0) {
        Kahan acc;
        const int ntx_max = std::min(residual, m);
        for (int ntx = d; ntx <= ntx_max; ++ntx) {
          acc.add(trans_attempt(ntx, residual, cfg) * trans_success(d, ntx, table));
        }
        p = acc.sum;
      } else {
        // f_p = 1 forces all residual contenders to transmit (and implies
        // residual <= M-1, so the outage table covers them).
        p = trans_success(d, residual, table);
      }
      const int j = i + d;
      if (j < n) {
        chain.q[static_cast<std::size_t>(i) * n + j] = p;
      } else {
        chain.y[i] = p;  // j == n: absorption
      }
      off_diag.add(p);
    }
    // Self-loop closes the row: every transmission in the round failed.
    chain.q[static_cast<std::size_t>(i) * n + i] = 1.0 - off_diag.sum;
  }
  return chain;
}

AbsorptionStats absorption_stats(const AbsorbingChain& chain) {
  const int n = chain.n;
  const int k_max = chain.k_max;

  AbsorptionStats stats;
  stats.absorb_by_jump.assign(k_max, 0.0);
  stats.residual_dist.assign(n, 0.0);

  // v holds the first row of Q^k; start from the initial state 0.
  std::vector<double> v(n, 0.0), next(n, 0.0);
  v[0] = 1.0;

  Kahan lambda;
  Kahan rounds;
  for (int k = 0; k < k_max; ++k) {
    Kahan hit;
    for (int i = 0; i < n; ++i) {
      if (v[i] != 0.0) hit.add(v[i] * chain.y[i]);
    }
    stats.absorb_by_jump[k] = hit.sum;
    lambda.add(hit.sum);
    rounds.add((k + 1) * hit.sum);

    // next = v * Q, exploiting the band: row i feeds columns i..i+M.
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const std::size_t row = static_cast<std::size_t>(i) * n;
      for (int j = i; j < n; ++j) next[j] += vi * chain.q[row + j];
    }
    v.swap(next);
  }

  stats.lambda = lambda.sum;
  stats.residual_dist = v;
  stats.expected_rounds = rounds.sum + (1.0 - lambda.sum) * k_max;
  return stats;
}

double expected_transmit_activity(const AbsorbingChain& chain, const SystemConfig& cfg) {
  const int n = chain.n;
  const int m = cfg.n_antennas;

  std::vector<double> v(n, 0.0), next(n, 0.0);
  v[0] = 1.0;

  Kahan total;
  total.add(n * access_prob(n, m));  // first round: everyone contends
  for (int k = 1; k < chain.k_max; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      const std::size_t row = static_cast<std::size_t>(i) * n;
      for (int j = i; j < n; ++j) next[j] += vi * chain.q[row + j];
    }
    v.swap(next);
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      const int residual = n - i;
      total.add(v[i] * residual * access_prob(residual, m));
    }
  }
  return total.sum;
}

}  // namespace gfurllc
