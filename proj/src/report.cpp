// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gfurllc {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::ordered_json config_json(const SystemConfig& cfg) {
  nlohmann::ordered_json j;
  j["n_ues"] = cfg.n_ues;
  j["n_antennas"] = cfg.n_antennas;
  j["arrival_prob"] = cfg.arrival_prob;
  j["etp_dbm"] = cfg.etp_dbm;
  j["est_error"] = cfg.est_error;
  j["k_rep"] = cfg.k_rep;
  j["k_fb"] = cfg.k_fb;
  j["sttis_per_slot"] = cfg.sttis_per_slot;
  j["stti_duration_s"] = cfg.stti_duration_s;
  j["bandwidth_hz"] = cfg.bandwidth_hz;
  j["packet_bits"] = cfg.packet_bits;
  j["bler_target"] = cfg.bler_target;
  j["noise_psd_dbm_hz"] = cfg.noise_psd_dbm_hz;
  j["p_circuit_antenna_dbm"] = cfg.p_circuit_antenna_dbm;
  j["p_bs_tx_dbm"] = cfg.p_bs_tx_dbm;
  j["ue_distance_min_m"] = cfg.ue_distance_range_m.first;
  j["ue_distance_max_m"] = cfg.ue_distance_range_m.second;
  j["pathloss_intercept_db"] = cfg.pathloss.intercept_db;
  j["pathloss_slope_db"] = cfg.pathloss.slope_db;
  if (cfg.mean_ue_power_w) {
    j["mean_ue_power_w"] = *cfg.mean_ue_power_w;
  } else {
    j["mean_ue_power_w"] = nullptr;
  }
  j["max_transmissions"] = cfg.max_transmissions();
  return j;
}

nlohmann::ordered_json report_json(const SystemConfig& cfg, const MetricsReport& rep) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  nlohmann::ordered_json m;
  m["epsilon"] = rep.epsilon;
  m["reliability"] = 1.0 - rep.epsilon;
  m["throughput_bps"] = rep.throughput_bps;
  m["throughput_conditional_bps"] = rep.throughput_conditional_bps;
  m["power_w"] = rep.power_w;
  if (rep.efficiency_defined) {
    m["efficiency_bpj"] = rep.efficiency_bpj;
    m["efficiency_conditional_bpj"] = rep.efficiency_conditional_bpj;
  } else {
    m["efficiency_bpj"] = nullptr;
    m["efficiency_conditional_bpj"] = nullptr;
  }
  m["mean_ue_power_w"] = rep.mean_ue_power_w;
  m["lambda"] = rep.lambda;
  m["p_arrival"] = rep.p_arrival;
  j["metrics"] = m;
  return j;
}

nlohmann::ordered_json estimate_json(const SystemConfig& cfg, const McEstimate& est) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  nlohmann::ordered_json e;
  e["channel_mode"] = to_string(est.channel_mode);
  e["n_slots"] = est.n_slots;
  e["seed"] = est.seed;
  e["workers"] = est.workers;
  e["epsilon_hat"] = est.epsilon_hat;
  e["epsilon_se"] = est.epsilon_se;
  e["throughput_hat_bps"] = est.throughput_hat;
  e["throughput_se_bps"] = est.throughput_se;
  e["power_hat_w"] = est.power_hat;
  e["power_se_w"] = est.power_se;
  if (est.eta_defined) {
    e["eta_hat_bpj"] = est.eta_hat;
    e["eta_se_bpj"] = est.eta_se;
  } else {
    e["eta_hat_bpj"] = nullptr;
    e["eta_se_bpj"] = nullptr;
  }
  e["frac_snr_below_10"] = est.frac_snr_below_10;
  e["realized_mean_ue_power_w"] = est.realized_mean_ue_power_w;
  j["estimate"] = e;
  return j;
}

nlohmann::ordered_json opt_result_json(const OptResult& res, const std::string& variable) {
  nlohmann::ordered_json j;
  j["variable"] = variable;
  j["feasible"] = res.feasible;
  j["best_value"] = res.best_value;
  j["best_eta_bpj"] = res.best_eta;
  j["feasible_bound"] = res.feasible_bound;
  j["evaluations"] = res.evaluations;
  nlohmann::ordered_json sweep = nlohmann::ordered_json::array();
  for (const auto& r : res.sweep) {
    sweep.push_back({{"candidate", r.candidate},
                     {"epsilon", r.epsilon},
                     {"eta_bpj", r.eta},
                     {"feasible", r.feasible}});
  }
  j["sweep"] = sweep;
  return j;
}

namespace {

void append_config_cells(std::ostringstream& os, const SystemConfig& cfg) {
  for (const auto& v : config_values(cfg)) os << ',' << v;
}

std::string config_header_cells() {
  std::ostringstream os;
  for (const auto& k : config_keys()) os << ',' << k;
  return os.str();
}

}  // namespace

std::string report_csv_header() {
  std::string h = config_header_cells();
  h.erase(0, 1);  // drop the leading comma
  return h +
         ",epsilon,throughput_bps,power_w,efficiency_bpj,"
         "throughput_conditional_bps,efficiency_conditional_bpj,mean_ue_power_used_w";
}

std::string report_csv_row(const SystemConfig& cfg, const MetricsReport& rep) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : config_values(cfg)) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << ',' << format_double(rep.epsilon) << ',' << format_double(rep.throughput_bps) << ','
     << format_double(rep.power_w) << ',' << format_double(rep.efficiency_bpj) << ','
     << format_double(rep.throughput_conditional_bps) << ','
     << format_double(rep.efficiency_conditional_bpj) << ','
     << format_double(rep.mean_ue_power_w);
  return os.str();
}

std::string sweep_csv_header() {
  return "engine" + config_header_cells() +
         ",epsilon,epsilon_se,throughput_bps,throughput_se,power_w,power_se,"
         "efficiency_bpj,efficiency_se,n_slots,seed";
}

std::string sweep_csv_row(const SystemConfig& cfg, const MetricsReport& rep) {
  std::ostringstream os;
  os << "analysis";
  append_config_cells(os, cfg);
  os << ',' << format_double(rep.epsilon) << ",," << format_double(rep.throughput_bps) << ",,"
     << format_double(rep.power_w) << ",," << format_double(rep.efficiency_bpj) << ",,,";
  return os.str();
}

std::string sweep_csv_row(const SystemConfig& cfg, const McEstimate& est) {
  std::ostringstream os;
  os << (est.channel_mode == ChannelMode::iid ? "sim_iid" : "sim_cor");
  append_config_cells(os, cfg);
  os << ',' << format_double(est.epsilon_hat) << ',' << format_double(est.epsilon_se) << ','
     << format_double(est.throughput_hat) << ',' << format_double(est.throughput_se) << ','
     << format_double(est.power_hat) << ',' << format_double(est.power_se) << ','
     << format_double(est.eta_hat) << ',' << format_double(est.eta_se) << ',' << est.n_slots
     << ',' << est.seed;
  return os.str();
}

std::string outage_csv(const OutageTable& table) {
  std::ostringstream os;
  os << "n_tx,rho\n";
  for (int n_tx = 1; n_tx <= table.m(); ++n_tx) {
    os << n_tx << ',' << format_double(table(n_tx)) << '\n';
  }
  return os.str();
}

std::string chain_csv(const AbsorbingChain& chain) {
  const int n = chain.n;
  std::ostringstream os;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      double v;
      if (i == n) {
        v = j == n ? 1.0 : 0.0;  // absorbing row
      } else if (j == n) {
        v = chain.y[i];
      } else {
        v = chain.q_at(i, j);
      }
      os << (j ? "," : "") << format_double(v);
    }
    os << '\n';
  }
  return os.str();
}

std::string opt_sweep_csv(const OptResult& res, const std::string& variable) {
  std::ostringstream os;
  os << variable << ",epsilon,eta_bpj,feasible\n";
  for (const auto& r : res.sweep) {
    os << r.candidate << ',' << format_double(r.epsilon) << ',' << format_double(r.eta) << ','
       << (r.feasible ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string trace_jsonl(const SlotTrace& trace) {
  nlohmann::ordered_json j;
  j["slot"] = trace.slot;
  j["n_arrivals"] = trace.n_arrivals;
  j["successes"] = trace.successes;
  j["drops"] = trace.drops;
  j["rounds_used"] = trace.rounds_used;
  j["energy_joules"] = trace.energy_joules;
  j["arrivals"] = trace.arrivals;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const auto& r : trace.rounds) {
    rounds.push_back({{"residual", r.residual},
                      {"access_prob", r.access_prob},
                      {"transmitters", r.transmitters},
                      {"snr", r.snr},
                      {"successes", r.successes}});
  }
  j["rounds"] = rounds;
  return j.dump();
}

namespace {

ValidationRow make_row(const std::string& name, double analytical, double estimate, double se,
                       double fallback_se = 0.0) {
  ValidationRow row;
  row.metric = name;
  row.analytical = analytical;
  row.estimate = estimate;
  row.se = se;
  if (se <= 0.0) se = fallback_se;  // e.g. zero observed drops: test under the null SE
  if (se > 0.0) {
    row.z = (estimate - analytical) / se;
    row.flagged = std::fabs(row.z) > 3.0;
  } else {
    const double diff = estimate - analytical;
    // Degenerate case: both engines deterministic (e.g. outage-free regime).
    row.z = std::numeric_limits<double>::quiet_NaN();
    row.flagged = diff != 0.0 && !(std::isnan(estimate) && std::isnan(analytical));
  }
  return row;
}

}  // namespace

ValidationReport validate_engines(const SystemConfig& cfg, std::uint64_t n_slots,
                                  ChannelMode mode, std::uint64_t seed, int workers) {
  cfg.validate();
  ValidationReport out;
  out.n_slots = n_slots;
  out.seed = seed;
  out.workers = workers;
  out.mode = mode;

  const UePlacement placement = place_ues(cfg, seed);
  CampaignOptions opts;
  opts.placement = placement;
  const McEstimate est = run_campaign(cfg, n_slots, mode, seed, workers, opts);
  out.frac_snr_below_10 = est.frac_snr_below_10;

  // Align the analytical mean UE power with the placement actually
  // simulated, so the comparison is free of placement sampling noise.
  SystemConfig acfg = cfg;
  acfg.mean_ue_power_w = placement.mean_tx_power_w();
  const MetricsReport rep = AnalysisEngine(acfg).report();

  const double eps_null_se =
      std::sqrt(rep.epsilon * (1.0 - rep.epsilon) / static_cast<double>(n_slots));
  out.rows.push_back(
      make_row("epsilon", rep.epsilon, est.epsilon_hat, est.epsilon_se, eps_null_se));
  out.rows.push_back(make_row("throughput_bps", rep.throughput_conditional_bps,
                              est.throughput_hat, est.throughput_se));
  out.rows.push_back(make_row("power_w", rep.power_w, est.power_hat, est.power_se));
  out.rows.push_back(make_row("eta_bpj", rep.efficiency_conditional_bpj, est.eta_hat,
                              est.eta_se));
  // Unconditional bracket for reference; expected to drift at large epsilon.
  out.rows.push_back(make_row("throughput_unconditional_bps", rep.throughput_bps,
                              est.throughput_hat, est.throughput_se));
  out.rows.push_back(
      make_row("eta_unconditional_bpj", rep.efficiency_bpj, est.eta_hat, est.eta_se));

  for (const auto& r : out.rows) out.any_flagged = out.any_flagged || r.flagged;
  return out;
}

nlohmann::ordered_json validation_json(const SystemConfig& cfg, const ValidationReport& rep) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["n_slots"] = rep.n_slots;
  j["seed"] = rep.seed;
  j["workers"] = rep.workers;
  j["channel_mode"] = to_string(rep.mode);
  j["frac_snr_below_10"] = rep.frac_snr_below_10;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) {
    nlohmann::ordered_json row;
    row["metric"] = r.metric;
    row["analytical"] = r.analytical;
    row["estimate"] = r.estimate;
    row["se"] = r.se;
    if (std::isnan(r.z)) {
      row["z"] = nullptr;
    } else {
      row["z"] = r.z;
    }
    row["flagged"] = r.flagged;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["any_flagged"] = rep.any_flagged;
  return j;
}

}  // namespace gfurllc
