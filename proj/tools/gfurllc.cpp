// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — command-line front end: analysis, simulation, cross-validation,
// parameter sweeps and QoS-constrained optimization of the grant-free
// uplink URLLC system.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gfurllc/metrics.hpp"
#include "gfurllc/optimize.hpp"
#include "gfurllc/report.hpp"
#include "gfurllc/sim.hpp"

namespace {

constexpr const char* kEnvPrefix = "GFURLLC_";

struct GlobalArgs {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> overrides;  // key=value
  std::optional<std::uint64_t> seed;
  std::uint64_t slots = 1000000;
  int workers = 0;  // 0 = hardware concurrency
  std::string out_path;
  std::string channel_mode = "iid";
};

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Resolution order: defaults < preset < config file < environment < --set.
gfurllc::SystemConfig assemble_config(const GlobalArgs& g) {
  gfurllc::SystemConfig cfg;
  if (!g.preset_name.empty()) cfg = gfurllc::preset(g.preset_name);
  if (!g.config_path.empty()) {
    if (gfurllc::has_preset(g.config_path) && !std::ifstream(g.config_path)) {
      cfg = gfurllc::preset(g.config_path);
    } else {
      cfg = gfurllc::load_config_file(g.config_path, cfg);
    }
  }
  for (const auto& key : gfurllc::config_keys()) {
    std::string env_name = kEnvPrefix;
    for (const char ch : key) env_name += static_cast<char>(std::toupper(ch));
    if (const char* v = std::getenv(env_name.c_str())) {
      gfurllc::apply_override(cfg, key, v);
    }
  }
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw gfurllc::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    gfurllc::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

std::uint64_t resolve_seed(const GlobalArgs& g) {
  if (g.seed) return *g.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const GlobalArgs& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + g.out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon != std::string::npos && item.find(':', colon + 1) != std::string::npos) {
      // a:b:step range, inclusive of b up to rounding
      const auto c2 = item.find(':', colon + 1);
      const double a = std::stod(item.substr(0, colon));
      const double b = std::stod(item.substr(colon + 1, c2 - colon - 1));
      const double step = std::stod(item.substr(c2 + 1));
      if (!(step > 0.0)) throw std::runtime_error("sweep range step must be positive");
      for (double v = a; v <= b + 1e-9 * step; v += step) out.push_back(gfurllc::format_double(v));
    } else if (!item.empty()) {
      out.push_back(item);
    }
  }
  if (out.empty()) throw std::runtime_error("sweep value list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grant-free uplink URLLC: Markov-chain analysis, Monte Carlo simulation "
               "and energy-efficiency optimization"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--config", g.config_path, "key=value config file (or preset name)");
  app.add_option("--preset", g.preset_name, "named preset, e.g. paper_sec5");
  app.add_option("--set", g.overrides, "config override key=value (repeatable)");
  app.add_option("--seed", g.seed, "RNG seed (generated and recorded when omitted)");
  app.add_option("--slots", g.slots, "Monte Carlo slots per campaign");
  app.add_option("--workers", g.workers, "worker threads (0 = all cores)");
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_option("--channel-mode", g.channel_mode, "fading mode: iid or cor");

  auto* analyze = app.add_subcommand("analyze", "closed-form metrics of one configuration");
  std::string analyze_format = "json";
  analyze->add_option("--format", analyze_format, "json or csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo protocol/link simulation");
  std::uint64_t trace_cap = 0;
  std::string trace_out;
  simulate->add_option("--trace-cap", trace_cap, "dump the first N slot traces (JSON lines)");
  simulate->add_option("--trace-out", trace_out, "trace output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "run both engines and z-score the gap");

  auto* sweep = app.add_subcommand("sweep", "vary one config key, emit one CSV row per value");
  std::string sweep_param, sweep_values, sweep_engine = "analysis";
  bool fix_placement = false;
  sweep->add_option("--param", sweep_param, "config key to sweep")->required();
  sweep->add_option("--values", sweep_values, "comma list and/or a:b:step ranges")->required();
  sweep->add_option("--engine", sweep_engine, "analysis, sim or both");
  sweep->add_flag("--fix-placement", fix_placement,
                  "reuse one UE placement across all campaigns");

  double eps_max = 1e-5;
  int m_max = 0;
  auto* opt_n = app.add_subcommand("optimize-n", "max-eta UE count under the QoS constraint");
  opt_n->add_option("--eps-max", eps_max, "reliability constraint epsilon^max");
  auto* opt_m = app.add_subcommand("optimize-m", "max-eta antenna count under the QoS constraint");
  opt_m->add_option("--eps-max", eps_max, "reliability constraint epsilon^max");
  opt_m->add_option("--m-max", m_max, "largest antenna count to consider (default 2N)");

  auto* dump_chain = app.add_subcommand("dump-chain", "canonical transition matrix as CSV");
  int chain_level = 0;
  dump_chain->add_option("--contention", chain_level, "initial contention level n")->required();
  auto* dump_outage = app.add_subcommand("dump-outage", "outage table rho(N') as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    const gfurllc::SystemConfig cfg = assemble_config(g);
    const std::uint64_t seed = resolve_seed(g);
    const int workers = effective_workers(g.workers);
    const gfurllc::ChannelMode mode = gfurllc::channel_mode_from_string(g.channel_mode);

    if (analyze->parsed()) {
      const gfurllc::MetricsReport rep = gfurllc::AnalysisEngine(cfg).report();
      if (analyze_format == "csv") {
        emit(g, gfurllc::report_csv_header() + "\n" + gfurllc::report_csv_row(cfg, rep) + "\n");
      } else if (analyze_format == "json") {
        emit(g, gfurllc::report_json(cfg, rep).dump(2));
      } else {
        throw std::runtime_error("--format must be json or csv");
      }
    } else if (simulate->parsed()) {
      const gfurllc::McEstimate est = gfurllc::run_campaign(cfg, g.slots, mode, seed, workers);
      emit(g, gfurllc::estimate_json(cfg, est).dump(2));
      if (trace_cap > 0) {
        const gfurllc::UePlacement placement = gfurllc::place_ues(cfg, seed);
        gfurllc::SlotSimulator sim(cfg, placement, mode, seed);
        std::ostringstream lines;
        for (std::uint64_t s = 0; s < std::min(trace_cap, g.slots); ++s) {
          lines << gfurllc::trace_jsonl(sim.run_slot(s, true)) << '\n';
        }
        if (trace_out.empty()) {
          std::cout << lines.str();
        } else {
          std::ofstream tf(trace_out, std::ios::binary);
          if (!tf) throw std::runtime_error("cannot open trace file: " + trace_out);
          tf << lines.str();
        }
      }
    } else if (validate->parsed()) {
      const gfurllc::ValidationReport rep =
          gfurllc::validate_engines(cfg, g.slots, mode, seed, workers);
      emit(g, gfurllc::validation_json(cfg, rep).dump(2));
    } else if (sweep->parsed()) {
      const auto values = split_values(sweep_values);
      const bool do_analysis = sweep_engine == "analysis" || sweep_engine == "both";
      const bool do_sim = sweep_engine == "sim" || sweep_engine == "both";
      if (!do_analysis && !do_sim) {
        throw std::runtime_error("--engine must be analysis, sim or both");
      }
      if (fix_placement && sweep_param == "n_ues") {
        throw std::runtime_error("--fix-placement cannot be combined with an n_ues sweep");
      }
      std::optional<gfurllc::UePlacement> shared_placement;
      if (fix_placement) shared_placement = gfurllc::place_ues(cfg, seed);
      std::ostringstream os;
      os << "# seed=" << seed << " param=" << sweep_param << '\n';
      os << gfurllc::sweep_csv_header() << '\n';
      std::uint64_t idx = 0;
      for (const auto& value : values) {
        gfurllc::SystemConfig c = cfg;
        gfurllc::apply_override(c, sweep_param, value);
        c.validate();
        if (do_analysis) {
          os << gfurllc::sweep_csv_row(c, gfurllc::AnalysisEngine(c).report()) << '\n';
        }
        if (do_sim) {
          gfurllc::CampaignOptions opts;
          opts.placement = shared_placement;
          // Distinct campaign seeds so placements genuinely redraw per value.
          const std::uint64_t campaign_seed = fix_placement ? seed : seed + idx;
          os << gfurllc::sweep_csv_row(
                    c, gfurllc::run_campaign(c, g.slots, mode, campaign_seed, workers, opts))
             << '\n';
        }
        ++idx;
      }
      emit(g, os.str());
    } else if (opt_n->parsed()) {
      const gfurllc::OptResult res = gfurllc::optimize_n(cfg, eps_max, workers);
      auto j = gfurllc::opt_result_json(res, "n_ues");
      emit(g, j.dump(2));
    } else if (opt_m->parsed()) {
      const int upper = m_max > 0 ? m_max : 2 * cfg.n_ues;
      const gfurllc::OptResult res = gfurllc::optimize_m(cfg, eps_max, upper, workers);
      auto j = gfurllc::opt_result_json(res, "n_antennas");
      emit(g, j.dump(2));
    } else if (dump_chain->parsed()) {
      const gfurllc::OutageTable table = gfurllc::build_outage_table(cfg);
      emit(g, gfurllc::chain_csv(gfurllc::build_chain(chain_level, cfg, table)));
    } else if (dump_outage->parsed()) {
      emit(g, gfurllc::outage_csv(gfurllc::build_outage_table(cfg)));
    }
  } catch (const gfurllc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
