// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/outage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gfurllc/rate.hpp"
#include "gfurllc/special.hpp"

namespace gfurllc {

namespace {

// (2^Omega - 1) evaluated with expm1 so a tiny exponent keeps full precision.
double snr_threshold(double omega) { return std::expm1(omega * std::numbers::ln2); }

double rho_from_parts(const SystemConfig& cfg, int n_tx, double gamma_star) {
  const double xi = cfg.etp_w();
  const double n0b = cfg.noise_power_w();
  const double d2 = cfg.est_error * cfg.est_error;
  const double shape = static_cast<double>(cfg.n_antennas - n_tx + 1) * cfg.k_rep;
  const double arg = (n0b + xi * d2 * n_tx) * gamma_star / (xi * (d2 + 1.0));
  return reg_lower_gamma(shape, arg);
}

}  // namespace

double OutageTable::operator()(int n_tx) const {
  if (n_tx < 1 || n_tx > m()) {
    throw std::domain_error("OutageTable: n_tx outside 1..M");
  }
  return rho[n_tx - 1];
}

double outage_prob(const SystemConfig& cfg, int n_tx) {
  if (n_tx < 1) throw std::domain_error("outage_prob: n_tx must be >= 1");
  if (n_tx > cfg.n_antennas) {
    throw std::domain_error("outage_prob: n_tx exceeds antenna count (ZF shape would vanish)");
  }
  return rho_from_parts(cfg, n_tx, snr_threshold(threshold_exponent(cfg)));
}

OutageTable build_outage_table(const SystemConfig& cfg) {
  OutageTable table;
  table.config_hash = config_hash(cfg);
  table.rho.resize(cfg.n_antennas);
  const double gamma_star = snr_threshold(threshold_exponent(cfg));
  for (int n_tx = 1; n_tx <= cfg.n_antennas; ++n_tx) {
    table.rho[n_tx - 1] = rho_from_parts(cfg, n_tx, gamma_star);
  }
  return table;
}

}  // namespace gfurllc
