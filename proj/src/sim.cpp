// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfurllc/parallel.hpp"
#include "gfurllc/rate.hpp"
#include "gfurllc/special.hpp"

namespace gfurllc {

namespace {

constexpr std::uint64_t kBlockSlots = 4096;

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

std::string to_string(ChannelMode mode) { return mode == ChannelMode::iid ? "IID" : "COR"; }

ChannelMode channel_mode_from_string(std::string_view s) {
  if (s == "iid" || s == "IID") return ChannelMode::iid;
  if (s == "cor" || s == "COR") return ChannelMode::cor;
  throw std::invalid_argument("channel mode must be 'iid' or 'cor'");
}

double UePlacement::mean_tx_power_w() const {
  if (tx_power_w.empty()) return 0.0;
  Kahan acc;
  for (const double p : tx_power_w) acc.add(p);
  return acc.sum / static_cast<double>(tx_power_w.size());
}

UePlacement place_ues(const SystemConfig& cfg, std::uint64_t rng_seed) {
  UePlacement out;
  out.distances_m.resize(cfg.n_ues);
  out.pathloss_lin.resize(cfg.n_ues);
  out.tx_power_w.resize(cfg.n_ues);
  const auto [d1, d2] = cfg.ue_distance_range_m;
  const double xi = cfg.etp_w();
  RngStream stream(rng_seed, 0, 0, StreamPurpose::placement);
  for (int u = 0; u < cfg.n_ues; ++u) {
    const double d = d1 + (d2 - d1) * stream.next_unit();
    out.distances_m[u] = d;
    out.pathloss_lin[u] = pathloss_linear(d, cfg.pathloss);
    out.tx_power_w[u] = xi / out.pathloss_lin[u];
  }
  return out;
}

std::vector<double> zf_round(const std::vector<int>& transmitters, const SystemConfig& cfg,
                             RngStream& channel_stream, int k_rep) {
  const int n_tx = static_cast<int>(transmitters.size());
  const int m = cfg.n_antennas;
  std::vector<double> snr(n_tx, 0.0);
  if (n_tx == 0 || n_tx > m) return snr;  // n_tx > m: rank-deficient ZF, total outage

  const double xi = cfg.etp_w();
  const double noise_plus_err = cfg.noise_power_w() + xi * cfg.est_error * cfg.est_error * n_tx;
  std::vector<std::complex<double>> h_hat(static_cast<std::size_t>(m) * n_tx);
  std::vector<double> inv_diag(n_tx);
  GramWorkspace ws;
  for (int rep = 0; rep < k_rep; ++rep) {
    for (int t = 0; t < n_tx; ++t) {
      for (int i = 0; i < m; ++i) {
        const auto h = channel_stream.next_cgauss();
        const auto err = channel_stream.next_cgauss();
        h_hat[static_cast<std::size_t>(t) * m + i] = h + cfg.est_error * err;
      }
    }
    if (!gram_inverse_diagonal(h_hat.data(), m, n_tx, inv_diag.data(), ws)) {
      continue;  // singular draw contributes zero SNR
    }
    for (int t = 0; t < n_tx; ++t) snr[t] += xi / (noise_plus_err * inv_diag[t]);
  }
  return snr;
}

SlotSimulator::SlotSimulator(SystemConfig cfg, UePlacement placement, ChannelMode mode,
                             std::uint64_t seed, std::vector<double> per_ue_mu)
    : cfg_(std::move(cfg)),
      placement_(std::move(placement)),
      mode_(mode),
      seed_(seed),
      mu_(std::move(per_ue_mu)) {
  cfg_.validate();
  if (static_cast<int>(placement_.tx_power_w.size()) != cfg_.n_ues) {
    throw std::invalid_argument("SlotSimulator: placement size does not match n_ues");
  }
  if (mu_.empty()) {
    mu_.assign(cfg_.n_ues, cfg_.arrival_prob);
  } else if (static_cast<int>(mu_.size()) != cfg_.n_ues) {
    throw std::invalid_argument("SlotSimulator: per-UE arrival vector size mismatch");
  }
  for (const double mu : mu_) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw std::invalid_argument("SlotSimulator: per-UE arrival probability outside [0,1]");
    }
  }
  k_max_ = derive_k(cfg_);
  xi_w_ = cfg_.etp_w();
  n0b_w_ = cfg_.noise_power_w();
  inv_q_bler_ = inv_q(cfg_.bler_target);
  channel_uses_ = cfg_.channel_uses();
  rate_target_bps_ = static_cast<double>(cfg_.packet_bits) / cfg_.stti_duration_s;
  const int n = cfg_.n_ues;
  const int m = cfg_.n_antennas;
  contenders_.reserve(n);
  transmitters_.reserve(n);
  acked_.reserve(m);
  h_hat_.resize(static_cast<std::size_t>(m) * m);
  inv_diag_.resize(m);
  snr_.resize(m);
  cor_h_.resize(static_cast<std::size_t>(m) * n);
  cor_err_.resize(static_cast<std::size_t>(m) * n);
  cor_drawn_.assign(n, 0);
  gram_ws_.reserve(m);
}

SlotTrace SlotSimulator::run_slot(std::uint64_t slot, bool record_rounds) {
  const int m = cfg_.n_antennas;
  const int krf = cfg_.k_rep + cfg_.k_fb;
  const double delta = cfg_.est_error;

  SlotTrace trace;
  trace.slot = slot;

  contenders_.clear();
  {
    RngStream arrivals(seed_, slot, 0, StreamPurpose::arrival);
    for (int u = 0; u < cfg_.n_ues; ++u) {
      if (arrivals.next_unit() < mu_[u]) contenders_.push_back(u);
    }
  }
  trace.n_arrivals = static_cast<int>(contenders_.size());
  if (record_rounds) trace.arrivals = contenders_;
  if (mode_ == ChannelMode::cor) {
    for (const int u : contenders_) cor_drawn_[u] = 0;
  }

  double ue_power_sum = 0.0;
  for (int round = 0; round < k_max_ && !contenders_.empty(); ++round) {
    const int residual = static_cast<int>(contenders_.size());
    const double fp = access_prob(residual, m);
    trace.rounds_used = round + 1;

    transmitters_.clear();
    {
      RngStream access(seed_, slot, static_cast<std::uint32_t>(round), StreamPurpose::access);
      for (const int u : contenders_) {
        if (access.next_unit() < fp) transmitters_.push_back(u);
      }
    }
    const int n_tx = static_cast<int>(transmitters_.size());
    for (const int u : transmitters_) ue_power_sum += placement_.tx_power_w[u];

    RoundRecord* rec = nullptr;
    if (record_rounds) {
      rec = &trace.rounds.emplace_back();
      rec->residual = residual;
      rec->access_prob = fp;
      rec->transmitters = transmitters_;
    }
    if (n_tx == 0) continue;

    const bool decodable = n_tx <= m;
    if (decodable) {
      std::fill(snr_.begin(), snr_.begin() + n_tx, 0.0);
      const double noise_plus_err = n0b_w_ + xi_w_ * delta * delta * n_tx;
      RngStream channel(seed_, slot, static_cast<std::uint32_t>(round), StreamPurpose::channel);
      for (int rep = 0; rep < cfg_.k_rep; ++rep) {
        if (mode_ == ChannelMode::iid) {
          for (int t = 0; t < n_tx; ++t) {
            for (int i = 0; i < m; ++i) {
              const auto h = channel.next_cgauss();
              const auto err = channel.next_cgauss();
              h_hat_[static_cast<std::size_t>(t) * m + i] = h + delta * err;
            }
          }
        } else {
          // COR: channel and estimation error are frozen for the whole slot.
          for (int t = 0; t < n_tx; ++t) {
            const int u = transmitters_[t];
            if (!cor_drawn_[u]) {
              RngStream per_ue(seed_, slot, static_cast<std::uint32_t>(u),
                               StreamPurpose::channel_cor);
              for (int i = 0; i < m; ++i) {
                cor_h_[static_cast<std::size_t>(u) * m + i] = per_ue.next_cgauss();
                cor_err_[static_cast<std::size_t>(u) * m + i] = per_ue.next_cgauss();
              }
              cor_drawn_[u] = 1;
            }
            for (int i = 0; i < m; ++i) {
              h_hat_[static_cast<std::size_t>(t) * m + i] =
                  cor_h_[static_cast<std::size_t>(u) * m + i] +
                  delta * cor_err_[static_cast<std::size_t>(u) * m + i];
            }
          }
        }
        if (gram_inverse_diagonal(h_hat_.data(), m, n_tx, inv_diag_.data(), gram_ws_)) {
          for (int t = 0; t < n_tx; ++t) snr_[t] += xi_w_ / (noise_plus_err * inv_diag_[t]);
        }
        if (mode_ == ChannelMode::cor) {
          // Frozen channel: every repetition contributes the same SNR.
          for (int t = 0; t < n_tx; ++t) snr_[t] *= cfg_.k_rep;
          break;
        }
      }
    }

    acked_.clear();
    snr_samples_ += static_cast<std::uint64_t>(n_tx);
    for (int t = 0; t < n_tx; ++t) {
      const double g = decodable ? snr_[t] : 0.0;
      if (g < 10.0) ++snr_below_10_;
      const bool ok =
          decodable &&
          achievable_rate_bps(g, channel_uses_, cfg_.bandwidth_hz, inv_q_bler_) >= rate_target_bps_;
      if (rec) rec->snr.push_back(g);
      if (ok) acked_.push_back(transmitters_[t]);
    }
    if (rec) rec->successes = acked_;
    if (acked_.empty()) continue;

    trace.successes += static_cast<int>(acked_.size());
    // Both lists are ascending; drop the ACKed UEs from contention in place.
    std::size_t ai = 0;
    std::size_t w = 0;
    for (const int u : contenders_) {
      if (ai < acked_.size() && acked_[ai] == u) {
        ++ai;
        continue;
      }
      contenders_[w++] = u;
    }
    contenders_.resize(w);
  }

  trace.drops = static_cast<int>(contenders_.size());

  if (trace.n_arrivals > 0) {
    // Same normalization as the analytical average power: UE transmit share
    // over the K-round service grid plus feedback/circuit power per round
    // served; idle rounds after absorption are never charged.
    const double psi =
        cfg_.k_rep / (static_cast<double>(k_max_) * krf) * ue_power_sum +
        (cfg_.p_bs_tx_w() / krf + m * cfg_.p_circuit_antenna_w()) * trace.rounds_used;
    trace.energy_joules = psi * static_cast<double>(k_max_) * krf * cfg_.stti_duration_s;
  }
  return trace;
}

McEstimate run_campaign(const SystemConfig& cfg, std::uint64_t n_slots, ChannelMode mode,
                        std::uint64_t seed, int workers, const CampaignOptions& opts) {
  cfg.validate();
  if (n_slots < 1) throw std::invalid_argument("run_campaign: n_slots must be >= 1");
  const UePlacement placement = opts.placement ? *opts.placement : place_ues(cfg, seed);

  const int k = derive_k(cfg);
  const double norm_s = static_cast<double>(cfg.k_rep + cfg.k_fb) * k * cfg.stti_duration_s;

  struct BlockSum {
    double bits = 0.0, bits2 = 0.0, psi = 0.0, psi2 = 0.0, bits_psi = 0.0;
    std::uint64_t drop_slots = 0, snr_samples = 0, snr_below = 0;
  };
  const std::uint64_t n_blocks = (n_slots + kBlockSlots - 1) / kBlockSlots;
  std::vector<BlockSum> blocks(n_blocks);

  parallel_for_blocks(n_blocks, workers, [&](std::uint64_t b) {
    SlotSimulator sim(cfg, placement, mode, seed, opts.per_ue_mu);
    BlockSum s;
    const std::uint64_t lo = b * kBlockSlots;
    const std::uint64_t hi = std::min(n_slots, lo + kBlockSlots);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const SlotTrace t = sim.run_slot(i);
      const double bits = static_cast<double>(t.successes) * cfg.packet_bits;
      const double psi = t.energy_joules / norm_s;
      s.bits += bits;
      s.bits2 += bits * bits;
      s.psi += psi;
      s.psi2 += psi * psi;
      s.bits_psi += bits * psi;
      if (t.drops > 0) ++s.drop_slots;
    }
    s.snr_samples = sim.snr_samples();
    s.snr_below = sim.snr_below_10();
    blocks[b] = s;
  });

  Kahan bits, bits2, psi, psi2, bits_psi;
  std::uint64_t drop_slots = 0, snr_samples = 0, snr_below = 0;
  for (const auto& s : blocks) {
    bits.add(s.bits);
    bits2.add(s.bits2);
    psi.add(s.psi);
    psi2.add(s.psi2);
    bits_psi.add(s.bits_psi);
    drop_slots += s.drop_slots;
    snr_samples += s.snr_samples;
    snr_below += s.snr_below;
  }

  const double n = static_cast<double>(n_slots);
  const double mean_b = bits.sum / n;
  const double mean_p = psi.sum / n;
  auto sample_var = [n](double sum_sq, double mean) {
    if (n < 2) return 0.0;
    const double v = (sum_sq - n * mean * mean) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  };
  const double var_b = sample_var(bits2.sum, mean_b);
  const double var_p = sample_var(psi2.sum, mean_p);
  const double cov_bp = n < 2 ? 0.0 : (bits_psi.sum - n * mean_b * mean_p) / (n - 1.0);

  McEstimate est;
  est.n_slots = n_slots;
  est.seed = seed;
  est.workers = workers;
  est.channel_mode = mode;
  est.epsilon_hat = static_cast<double>(drop_slots) / n;
  est.epsilon_se = std::sqrt(est.epsilon_hat * (1.0 - est.epsilon_hat) / n);
  est.throughput_hat = mean_b / norm_s;
  est.throughput_se = std::sqrt(var_b / n) / norm_s;
  est.power_hat = mean_p;
  est.power_se = std::sqrt(var_p / n);
  if (psi.sum > 0.0) {
    est.eta_defined = true;
    const double ratio = mean_b / mean_p;
    est.eta_hat = ratio / norm_s;
    // Delta-method variance of the ratio-of-means estimator.
    const double var_ratio =
        (var_b - 2.0 * ratio * cov_bp + ratio * ratio * var_p) / (n * mean_p * mean_p);
    est.eta_se = (var_ratio > 0.0 ? std::sqrt(var_ratio) : 0.0) / norm_s;
  }
  est.frac_snr_below_10 =
      snr_samples > 0 ? static_cast<double>(snr_below) / static_cast<double>(snr_samples) : 0.0;
  est.realized_mean_ue_power_w = placement.mean_tx_power_w();
  return est;
}

}  // namespace gfurllc
