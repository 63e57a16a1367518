// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gfurllc/binomial.hpp"

namespace gfurllc {

namespace {

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

std::vector<double> arrival_dist(const SystemConfig& cfg) {
  std::vector<double> p(cfg.n_ues + 1);
  for (int n = 0; n <= cfg.n_ues; ++n) p[n] = binomial_pmf(n, cfg.n_ues, cfg.arrival_prob);
  return p;
}

double mean_ue_power(const SystemConfig& cfg) {
  if (cfg.mean_ue_power_w) return *cfg.mean_ue_power_w;
  const auto [d1, d2] = cfg.ue_distance_range_m;
  if (!(d2 >= d1) || !(d1 > 0.0)) {
    throw ConfigError("ue_distance_range_m: need 0 < min <= max");
  }
  // P^UE(d) = xi / alpha(d) = xi * 10^(-intercept/10) * d^(slope/10);
  // integrate the power law over the uniform placement interval.
  const double s = cfg.pathloss.slope_db / 10.0;
  const double scale = cfg.etp_w() * std::pow(10.0, -cfg.pathloss.intercept_db / 10.0);
  if (d1 == d2) return scale * std::pow(d1, s);
  const double num = std::pow(d2, s + 1.0) - std::pow(d1, s + 1.0);
  return scale * num / ((s + 1.0) * (d2 - d1));
}

AnalysisEngine::AnalysisEngine(SystemConfig cfg, std::optional<OutageTable> table)
    : cfg_(std::move(cfg)) {
  cfg_.validate();
  table_ = table ? std::move(*table) : build_outage_table(cfg_);
}

const AnalysisEngine::Level& AnalysisEngine::level(int n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (const auto it = cache_.find(n); it != cache_.end()) return *it->second;
  }
  auto lvl = std::make_unique<Level>();
  lvl->chain = build_chain(n, cfg_, table_);
  lvl->stats = absorption_stats(lvl->chain);
  lvl->activity = expected_transmit_activity(lvl->chain, cfg_);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.try_emplace(n, std::move(lvl));
  (void)inserted;  // losing a race simply discards the duplicate
  return *it->second;
}

const AbsorbingChain& AnalysisEngine::chain(int n) const { return level(n).chain; }
const AbsorptionStats& AnalysisEngine::stats(int n) const { return level(n).stats; }
double AnalysisEngine::transmit_activity(int n) const { return level(n).activity; }

MetricsReport AnalysisEngine::report_for_n_ues(int n_ues) const {
  if (n_ues < 1) throw std::domain_error("report_for_n_ues: need at least one UE");
  const int k = derive_k(cfg_);
  const int krf = cfg_.k_rep + cfg_.k_fb;
  const double beta = cfg_.packet_bits;
  const double tau = cfg_.stti_duration_s;
  const double norm_s = static_cast<double>(krf) * k * tau;

  MetricsReport rep;
  rep.p_arrival.resize(n_ues + 1);
  for (int n = 0; n <= n_ues; ++n) {
    rep.p_arrival[n] = binomial_pmf(n, n_ues, cfg_.arrival_prob);
  }
  rep.lambda.resize(n_ues);
  rep.mean_ue_power_w = mean_ue_power(cfg_);

  // Error probability: slots with no arrivals cannot fail.
  Kahan eps;
  for (int n = 1; n <= n_ues; ++n) {
    if (rep.p_arrival[n] == 0.0) {
      rep.lambda[n - 1] = stats(n).lambda;
      continue;
    }
    const double lam = stats(n).lambda;
    rep.lambda[n - 1] = lam;
    eps.add(rep.p_arrival[n] * (1.0 - lam));
  }
  rep.epsilon = eps.sum;

  // Throughput: residual partial deliveries plus the all-delivered term.
  Kahan bits;        // headline bracket with n(1-epsilon)
  Kahan bits_cond;   // exact bracket with n*lambda_n
  Kahan ue_activity; // expected transmitting UEs, all rounds
  Kahan bs_rounds;   // expected rounds the BS serves
  for (int n = 1; n <= n_ues; ++n) {
    const double pn = rep.p_arrival[n];
    if (pn == 0.0) continue;
    const auto& st = stats(n);
    Kahan partial;
    for (int i = 1; i <= n - 1; ++i) partial.add(i * st.residual_dist[i]);
    bits.add(pn * (partial.sum + n * (1.0 - rep.epsilon)));
    bits_cond.add(pn * (partial.sum + n * st.lambda));
    ue_activity.add(pn * transmit_activity(n));
    bs_rounds.add(pn * st.expected_rounds);
  }
  rep.throughput_bps = bits.sum * beta / norm_s;
  rep.throughput_conditional_bps = bits_cond.sum * beta / norm_s;

  // Average power: UE transmit share plus BS feedback and antenna circuits.
  const double ue_term =
      rep.mean_ue_power_w * cfg_.k_rep / (static_cast<double>(k) * krf) * ue_activity.sum;
  const double bs_term =
      (cfg_.p_bs_tx_w() / krf + cfg_.n_antennas * cfg_.p_circuit_antenna_w()) * bs_rounds.sum;
  rep.power_w = ue_term + bs_term;

  if (rep.power_w > 0.0) {
    rep.efficiency_defined = true;
    rep.efficiency_bpj = rep.throughput_bps / rep.power_w;
    rep.efficiency_conditional_bpj = rep.throughput_conditional_bps / rep.power_w;
  } else {
    rep.efficiency_defined = false;
    rep.efficiency_bpj = std::numeric_limits<double>::quiet_NaN();
    rep.efficiency_conditional_bpj = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double delay_constrained_error(const SystemConfig& cfg) {
  return AnalysisEngine(cfg).report().epsilon;
}

double throughput(const SystemConfig& cfg) { return AnalysisEngine(cfg).report().throughput_bps; }

double system_power(const SystemConfig& cfg) { return AnalysisEngine(cfg).report().power_w; }

MetricsReport energy_efficiency(const SystemConfig& cfg) { return AnalysisEngine(cfg).report(); }

}  // namespace gfurllc
