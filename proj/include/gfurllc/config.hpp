// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gfurllc {

/// Raised when a configuration value breaks a validity rule. The message
/// names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// dBm-valued fields are converted to linear watts through this one routine
/// so every module sees bit-identical powers.
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

/// Path-loss law in dB: pl_db(d) = intercept_db - slope_db * log10(d_m).
struct PathlossModel {
  double intercept_db = -35.3;
  double slope_db = 37.6;
};

/// Linear path-loss coefficient alpha(d). Rejects nonpositive distances.
double pathloss_linear(double distance_m, const PathlossModel& model = {});

/// All radio, traffic and protocol parameters of the grant-free uplink
/// system, plus the derived protocol quantities both engines share.
/// Immutable after validation; safe to share read-only across threads.
struct SystemConfig {
  int n_ues = 14;                      // N
  int n_antennas = 4;                  // M (BS receive antennas, M >= 2)
  double arrival_prob = 0.5;           // mu, per-UE per-slot Bernoulli parameter
  double etp_dbm = -92.4;              // xi, received-power target
  double est_error = 0.0;              // delta, channel-estimation error scale
  int k_rep = 1;                       // repetitions per transmission
  int k_fb = 1;                        // feedback wait in S-TTIs
  int sttis_per_slot = 14;             // L, with L*tau = delay bound
  double stti_duration_s = 1e-3 / 14;  // tau
  double bandwidth_hz = 900e3;         // B
  int packet_bits = 160;               // beta
  double bler_target = 1e-5;           // eps^B in the finite-blocklength rate
  double noise_psd_dbm_hz = -174.0;    // N0
  double p_circuit_antenna_dbm = 17.0;
  double p_bs_tx_dbm = 30.0;
  std::pair<double, double> ue_distance_range_m{50.0, 150.0};
  PathlossModel pathloss{};
  /// Explicit mean UE transmit power [W]; when set it replaces the
  /// closed-form expectation over the placement interval.
  std::optional<double> mean_ue_power_w;

  // Derived quantities -------------------------------------------------
  int max_transmissions() const;  // K = floor(L / (k_rep + k_fb))
  double etp_w() const { return dbm_to_watts(etp_dbm); }
  double noise_power_w() const { return dbm_to_watts(noise_psd_dbm_hz) * bandwidth_hz; }
  double p_circuit_antenna_w() const { return dbm_to_watts(p_circuit_antenna_dbm); }
  double p_bs_tx_w() const { return dbm_to_watts(p_bs_tx_dbm); }
  double channel_uses() const { return stti_duration_s * bandwidth_hz; }  // tau*B
  double slot_duration_s() const { return sttis_per_slot * stti_duration_s; }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// K = floor(L / (K_rep + K_F)); rejects configurations where the delay
/// bound cannot fit a single transmission round.
int derive_k(const SystemConfig& cfg);

/// Access probability of a residual contender: min{M/(residual+1), 1}.
double access_prob(int residual_contenders, int n_antennas);

/// FNV-1a hash of the canonical field serialization; identifies the config
/// that produced a derived table or cache entry.
std::uint64_t config_hash(const SystemConfig& cfg);

// --- key=value config files -------------------------------------------

/// Applies one `key=value` override. Unknown keys throw ConfigError.
void apply_override(SystemConfig& cfg, std::string_view key, std::string_view value);

/// Parses key=value text ('#' starts a comment). Does not validate.
SystemConfig parse_config_text(std::string_view text, SystemConfig base = {});

/// Reads a key=value file from disk.
SystemConfig load_config_file(const std::string& path, SystemConfig base = {});

/// Named presets; currently `paper_sec5`. Throws ConfigError for unknown names.
SystemConfig preset(std::string_view name);
bool has_preset(std::string_view name);

/// Names of all config keys accepted by apply_override, in canonical order.
const std::vector<std::string>& config_keys();

/// Serializes to one value string per key, canonical order (for hashing,
/// CSV columns and debugging).
std::vector<std::string> config_values(const SystemConfig& cfg);

}  // namespace gfurllc
