// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfurllc/config.hpp"
#include "gfurllc/linalg.hpp"
#include "gfurllc/rng.hpp"

namespace gfurllc {

/// Fading model across the S-TTIs of one slot.
///   iid: every repetition sees a fresh channel and estimation error — the
///        assumption the analytical engine shares.
///   cor: channel and estimation error are drawn once per slot and reused
///        for every repetition and retransmission (coherence-time stress).
enum class ChannelMode { iid, cor };

std::string to_string(ChannelMode mode);
ChannelMode channel_mode_from_string(std::string_view s);

/// Deployed UE positions with full path-loss-inversion transmit powers, so
/// every UE is received at exactly the configured ETP.
struct UePlacement {
  std::vector<double> distances_m;
  std::vector<double> pathloss_lin;  // alpha per UE
  std::vector<double> tx_power_w;    // xi / alpha per UE
  double mean_tx_power_w() const;
};

/// One transmission round inside a slot trace.
struct RoundRecord {
  int residual = 0;            // contenders at round start
  double access_prob = 0.0;    // f_p applied this round
  std::vector<int> transmitters;
  std::vector<double> snr;     // combined (MRC over repetitions) SNR per transmitter
  std::vector<int> successes;  // UEs that received an ACK this round
};

/// Per-slot record. `energy_joules` follows the same normalization as the
/// analytical average power (service rounds charged, idle remainder free).
struct SlotTrace {
  std::uint64_t slot = 0;
  int n_arrivals = 0;
  int successes = 0;
  int drops = 0;
  int rounds_used = 0;
  double energy_joules = 0.0;
  std::vector<int> arrivals;        // arrived UE indices
  std::vector<RoundRecord> rounds;  // filled only when detail is requested
};

/// Aggregated Monte Carlo estimators with standard errors.
struct McEstimate {
  double epsilon_hat = 0.0, epsilon_se = 0.0;
  double throughput_hat = 0.0, throughput_se = 0.0;  // bits/s
  double power_hat = 0.0, power_se = 0.0;            // W
  double eta_hat = 0.0, eta_se = 0.0;                // bits/J
  bool eta_defined = false;
  std::uint64_t n_slots = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  ChannelMode channel_mode = ChannelMode::iid;
  /// Fraction of combined SNR samples below 10 — the regime where the
  /// closed-form outage approximation starts to degrade.
  double frac_snr_below_10 = 0.0;
  double realized_mean_ue_power_w = 0.0;
};

/// Extra campaign knobs beyond the spec'd arguments.
struct CampaignOptions {
  /// Reuse a placement across campaigns (variance reduction in sweeps).
  std::optional<UePlacement> placement;
  /// Heterogeneous per-UE arrival probabilities; empty = homogeneous mu.
  std::vector<double> per_ue_mu;
};

/// I.i.d. uniform placement on the configured distance interval;
/// deterministic for a given seed.
UePlacement place_ues(const SystemConfig& cfg, std::uint64_t rng_seed);

/// Combined (MRC over K_rep repetitions) ZF post-processing SNR for each
/// transmitter, redrawing or reusing fading per `mode`. More transmitters
/// than antennas leaves the ZF rank-deficient: every SNR is zero.
/// Exposed mainly for distribution tests; campaigns use SlotSimulator.
std::vector<double> zf_round(const std::vector<int>& transmitters, const SystemConfig& cfg,
                             RngStream& channel_stream, int k_rep);

/// Simulates slots one at a time; owns per-worker scratch buffers. Every
/// random draw comes from a counter stream keyed by (seed, slot, round,
/// purpose), so slot i's trace never depends on which worker runs it.
class SlotSimulator {
 public:
  SlotSimulator(SystemConfig cfg, UePlacement placement, ChannelMode mode,
                std::uint64_t seed, std::vector<double> per_ue_mu = {});

  SlotTrace run_slot(std::uint64_t slot_index, bool record_rounds = false);

  // Campaign-level tallies, accumulated across run_slot calls.
  std::uint64_t snr_samples() const { return snr_samples_; }
  std::uint64_t snr_below_10() const { return snr_below_10_; }

 private:
  SystemConfig cfg_;
  UePlacement placement_;
  ChannelMode mode_;
  std::uint64_t seed_;
  std::vector<double> mu_;
  // Cached derived constants.
  int k_max_;
  double xi_w_, n0b_w_, inv_q_bler_, channel_uses_, rate_target_bps_;
  // Scratch.
  std::vector<int> contenders_, transmitters_, acked_;
  std::vector<std::complex<double>> h_true_, h_err_, h_hat_;
  std::vector<std::complex<double>> cor_h_, cor_err_;
  std::vector<char> cor_drawn_;
  std::vector<double> inv_diag_, snr_;
  GramWorkspace gram_ws_;
  std::uint64_t snr_samples_ = 0, snr_below_10_ = 0;
};

/// Runs n_slots independent slots and aggregates the estimators.
/// Bitwise-reproducible for a fixed seed regardless of `workers`: slots are
/// summed per fixed-size block and blocks are reduced in index order.
McEstimate run_campaign(const SystemConfig& cfg, std::uint64_t n_slots, ChannelMode mode,
                        std::uint64_t seed, int workers, const CampaignOptions& opts = {});

}  // namespace gfurllc
