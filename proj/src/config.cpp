// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gfurllc {

double pathloss_linear(double distance_m, const PathlossModel& model) {
  if (!(distance_m > 0.0)) {
    throw ConfigError("pathloss_linear: distance must be positive");
  }
  const double db = model.intercept_db - model.slope_db * std::log10(distance_m);
  return std::pow(10.0, db / 10.0);
}

int SystemConfig::max_transmissions() const { return sttis_per_slot / (k_rep + k_fb); }

int derive_k(const SystemConfig& cfg) {
  const int k = cfg.max_transmissions();
  if (k < 1) {
    throw ConfigError(
        "sttis_per_slot: delay bound too tight, floor(L/(k_rep+k_fb)) must be >= 1");
  }
  return k;
}

double access_prob(int residual_contenders, int n_antennas) {
  if (residual_contenders < 1) {
    throw std::domain_error("access_prob: residual_contenders must be >= 1");
  }
  return std::min(static_cast<double>(n_antennas) / (residual_contenders + 1), 1.0);
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n_ues < 1) fail("n_ues: must be a positive integer");
  if (n_antennas < 2) fail("n_antennas: at least 2 receive antennas required");
  if (!(arrival_prob >= 0.0 && arrival_prob <= 1.0)) fail("arrival_prob: must lie in [0,1]");
  if (!(est_error >= 0.0)) fail("est_error: must be nonnegative");
  if (k_rep < 1) fail("k_rep: must be a positive integer");
  if (k_fb < 1) fail("k_fb: must be a positive integer");
  if (sttis_per_slot < 1) fail("sttis_per_slot: must be a positive integer");
  if (!(stti_duration_s > 0.0)) fail("stti_duration_s: must be positive");
  if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz: must be positive");
  if (packet_bits < 1) fail("packet_bits: must be a positive integer");
  if (!(bler_target > 0.0 && bler_target < 1.0)) fail("bler_target: must lie in (0,1)");
  if (!std::isfinite(noise_psd_dbm_hz)) fail("noise_psd_dbm_hz: must be finite");
  if (!std::isfinite(etp_dbm)) fail("etp_dbm: must be finite");
  if (!(ue_distance_range_m.first > 0.0)) fail("ue_distance_min_m: must be positive");
  if (!(ue_distance_range_m.second >= ue_distance_range_m.first)) {
    fail("ue_distance_max_m: must be >= ue_distance_min_m");
  }
  if (!(pathloss.slope_db > 0.0)) fail("pathloss_slope_db: must be positive");
  if (mean_ue_power_w && !(*mean_ue_power_w >= 0.0)) {
    fail("mean_ue_power_w: must be nonnegative");
  }
  if (max_transmissions() < 1) {
    fail("sttis_per_slot: floor(L/(k_rep+k_fb)) = 0, no transmission fits the delay bound");
  }
}

namespace {

struct Field {
  std::string key;
  std::function<std::string(const SystemConfig&)> get;
  std::function<void(SystemConfig&, std::string_view)> set;
};

double parse_real(std::string_view key, std::string_view v) {
  try {
    size_t pos = 0;
    const std::string s(v);
    const double x = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError(std::string(key) + ": not a valid real number: '" + std::string(v) + "'");
  }
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || p != last) {
    throw ConfigError(std::string(key) + ": not a valid integer: '" + std::string(v) + "'");
  }
  return out;
}

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"n_ues", [](const SystemConfig& c) { return std::to_string(c.n_ues); },
       [](SystemConfig& c, std::string_view v) { c.n_ues = parse_int("n_ues", v); }},
      {"n_antennas", [](const SystemConfig& c) { return std::to_string(c.n_antennas); },
       [](SystemConfig& c, std::string_view v) { c.n_antennas = parse_int("n_antennas", v); }},
      {"arrival_prob", [](const SystemConfig& c) { return fmt_real(c.arrival_prob); },
       [](SystemConfig& c, std::string_view v) { c.arrival_prob = parse_real("arrival_prob", v); }},
      {"etp_dbm", [](const SystemConfig& c) { return fmt_real(c.etp_dbm); },
       [](SystemConfig& c, std::string_view v) { c.etp_dbm = parse_real("etp_dbm", v); }},
      {"est_error", [](const SystemConfig& c) { return fmt_real(c.est_error); },
       [](SystemConfig& c, std::string_view v) { c.est_error = parse_real("est_error", v); }},
      {"k_rep", [](const SystemConfig& c) { return std::to_string(c.k_rep); },
       [](SystemConfig& c, std::string_view v) { c.k_rep = parse_int("k_rep", v); }},
      {"k_fb", [](const SystemConfig& c) { return std::to_string(c.k_fb); },
       [](SystemConfig& c, std::string_view v) { c.k_fb = parse_int("k_fb", v); }},
      {"sttis_per_slot", [](const SystemConfig& c) { return std::to_string(c.sttis_per_slot); },
       [](SystemConfig& c, std::string_view v) { c.sttis_per_slot = parse_int("sttis_per_slot", v); }},
      {"stti_duration_s", [](const SystemConfig& c) { return fmt_real(c.stti_duration_s); },
       [](SystemConfig& c, std::string_view v) { c.stti_duration_s = parse_real("stti_duration_s", v); }},
      {"bandwidth_hz", [](const SystemConfig& c) { return fmt_real(c.bandwidth_hz); },
       [](SystemConfig& c, std::string_view v) { c.bandwidth_hz = parse_real("bandwidth_hz", v); }},
      {"packet_bits", [](const SystemConfig& c) { return std::to_string(c.packet_bits); },
       [](SystemConfig& c, std::string_view v) { c.packet_bits = parse_int("packet_bits", v); }},
      {"bler_target", [](const SystemConfig& c) { return fmt_real(c.bler_target); },
       [](SystemConfig& c, std::string_view v) { c.bler_target = parse_real("bler_target", v); }},
      {"noise_psd_dbm_hz", [](const SystemConfig& c) { return fmt_real(c.noise_psd_dbm_hz); },
       [](SystemConfig& c, std::string_view v) { c.noise_psd_dbm_hz = parse_real("noise_psd_dbm_hz", v); }},
      {"p_circuit_antenna_dbm", [](const SystemConfig& c) { return fmt_real(c.p_circuit_antenna_dbm); },
       [](SystemConfig& c, std::string_view v) { c.p_circuit_antenna_dbm = parse_real("p_circuit_antenna_dbm", v); }},
      {"p_bs_tx_dbm", [](const SystemConfig& c) { return fmt_real(c.p_bs_tx_dbm); },
       [](SystemConfig& c, std::string_view v) { c.p_bs_tx_dbm = parse_real("p_bs_tx_dbm", v); }},
      {"ue_distance_min_m", [](const SystemConfig& c) { return fmt_real(c.ue_distance_range_m.first); },
       [](SystemConfig& c, std::string_view v) { c.ue_distance_range_m.first = parse_real("ue_distance_min_m", v); }},
      {"ue_distance_max_m", [](const SystemConfig& c) { return fmt_real(c.ue_distance_range_m.second); },
       [](SystemConfig& c, std::string_view v) { c.ue_distance_range_m.second = parse_real("ue_distance_max_m", v); }},
      {"pathloss_intercept_db", [](const SystemConfig& c) { return fmt_real(c.pathloss.intercept_db); },
       [](SystemConfig& c, std::string_view v) { c.pathloss.intercept_db = parse_real("pathloss_intercept_db", v); }},
      {"pathloss_slope_db", [](const SystemConfig& c) { return fmt_real(c.pathloss.slope_db); },
       [](SystemConfig& c, std::string_view v) { c.pathloss.slope_db = parse_real("pathloss_slope_db", v); }},
      {"mean_ue_power_w",
       [](const SystemConfig& c) { return c.mean_ue_power_w ? fmt_real(*c.mean_ue_power_w) : std::string(); },
       [](SystemConfig& c, std::string_view v) {
         if (v.empty()) {
           c.mean_ue_power_w.reset();
         } else {
           c.mean_ue_power_w = parse_real("mean_ue_power_w", v);
         }
       }},
  };
  return f;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

std::vector<std::string> config_values(const SystemConfig& cfg) {
  std::vector<std::string> out;
  out.reserve(fields().size());
  for (const auto& f : fields()) out.push_back(f.get(cfg));
  return out;
}

void apply_override(SystemConfig& cfg, std::string_view key, std::string_view value) {
  const auto k = trim(key);
  const auto v = trim(value);
  for (const auto& f : fields()) {
    if (f.key == k) {
      f.set(cfg, v);
      return;
    }
  }
  throw ConfigError("unknown config key: '" + std::string(k) + "'");
}

SystemConfig parse_config_text(std::string_view text, SystemConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
      }
      apply_override(base, line.substr(0, eq), line.substr(eq + 1));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return base;
}

SystemConfig load_config_file(const std::string& path, SystemConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), base);
}

bool has_preset(std::string_view name) { return name == "paper_sec5"; }

SystemConfig preset(std::string_view name) {
  if (name == "paper_sec5") {
    // 30 kHz SCS, 2 OFDM symbols per S-TTI, 30 subcarriers for URLLC.
    SystemConfig c;
    c.n_ues = 14;
    c.n_antennas = 4;
    c.arrival_prob = 0.5;
    c.etp_dbm = -92.4;
    c.est_error = 0.0;
    c.k_rep = 1;
    c.k_fb = 1;
    c.sttis_per_slot = 14;  // L*tau = 1 ms delay bound
    c.stti_duration_s = 1e-3 / 14;
    c.bandwidth_hz = 900e3;
    c.packet_bits = 160;
    c.bler_target = 1e-5;
    c.noise_psd_dbm_hz = -174.0;
    c.p_circuit_antenna_dbm = 17.0;
    c.p_bs_tx_dbm = 30.0;
    c.ue_distance_range_m = {50.0, 150.0};
    c.pathloss = {};
    return c;
  }
  throw ConfigError("unknown preset: '" + std::string(name) + "'");
}

std::uint64_t config_hash(const SystemConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::string_view s) {
    for (const char ch : s) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ull;
    }
    h ^= 0x1f;
    h *= 0x100000001b3ull;
  };
  const auto& keys = config_keys();
  const auto vals = config_values(cfg);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    mix(keys[i]);
    mix(vals[i]);
  }
  return h;
}

}  // namespace gfurllc
