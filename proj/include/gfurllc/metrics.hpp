// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gfurllc/config.hpp"
#include "gfurllc/markov.hpp"
#include "gfurllc/outage.hpp"

namespace gfurllc {

/// System-level metrics of one configuration.
///
/// `throughput_bps` follows the headline bracket, which mixes the residual
/// success distribution with the unconditional error probability;
/// `throughput_conditional_bps` replaces that last term with the
/// per-contention-level success probability, which is the exact expectation
/// of delivered bits per slot (and what a simulator measures).
struct MetricsReport {
  double epsilon = 0.0;                    // delay-constrained error probability
  std::vector<double> lambda;              // lambda_n for n = 1..N
  double throughput_bps = 0.0;             // phi
  double throughput_conditional_bps = 0.0; // phi with n*lambda_n inner term
  double power_w = 0.0;                    // Psi
  double efficiency_bpj = 0.0;             // eta = phi/Psi (NaN when undefined)
  double efficiency_conditional_bpj = 0.0;
  bool efficiency_defined = false;         // false when mu = 0 (no energy spent)
  std::vector<double> p_arrival;           // p_n for n = 0..N
  double mean_ue_power_w = 0.0;            // P_bar^UE used by the power model
};

/// Arrival distribution p_n = C(N,n) mu^n (1-mu)^(N-n), n = 0..N.
std::vector<double> arrival_dist(const SystemConfig& cfg);

/// Mean UE transmit power under full path-loss inversion, as the closed-form
/// expectation over the uniform placement interval (or the configured
/// explicit override). Rejects inverted distance intervals.
double mean_ue_power(const SystemConfig& cfg);

/// Caches the outage table and one absorbing chain per contention level for
/// a fixed physical configuration. Chains depend only on (M, K-budget,
/// outage law), never on the UE count, so one engine can evaluate metrics
/// for any number of UEs — which is what the optimizer sweeps.
class AnalysisEngine {
 public:
  explicit AnalysisEngine(SystemConfig cfg, std::optional<OutageTable> table = std::nullopt);

  const SystemConfig& config() const { return cfg_; }
  const OutageTable& outage_table() const { return table_; }

  const AbsorbingChain& chain(int n) const;
  const AbsorptionStats& stats(int n) const;
  /// UE-side activity factor of the power expansion (cached per n).
  double transmit_activity(int n) const;

  MetricsReport report() const { return report_for_n_ues(cfg_.n_ues); }
  MetricsReport report_for_n_ues(int n_ues) const;

 private:
  struct Level {
    AbsorbingChain chain;
    AbsorptionStats stats;
    double activity = 0.0;
  };
  const Level& level(int n) const;

  SystemConfig cfg_;
  OutageTable table_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Level>> cache_;
};

/// One-shot wrappers over a transient engine.
double delay_constrained_error(const SystemConfig& cfg);
double throughput(const SystemConfig& cfg);
double system_power(const SystemConfig& cfg);
MetricsReport energy_efficiency(const SystemConfig& cfg);

}  // namespace gfurllc
