// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gfurllc/markov.hpp"
#include "gfurllc/metrics.hpp"
#include "gfurllc/optimize.hpp"
#include "gfurllc/outage.hpp"
#include "gfurllc/sim.hpp"

namespace gfurllc {

/// Round-trip-safe decimal formatting ("%.17g"); all file output goes
/// through this so reruns are byte-identical.
std::string format_double(double x);

nlohmann::ordered_json config_json(const SystemConfig& cfg);
nlohmann::ordered_json report_json(const SystemConfig& cfg, const MetricsReport& rep);
nlohmann::ordered_json estimate_json(const SystemConfig& cfg, const McEstimate& est);
nlohmann::ordered_json opt_result_json(const OptResult& res, const std::string& variable);

// CSV: stable column order — every config field, then epsilon, throughput,
// power, efficiency, then the conditional-throughput extras.
std::string report_csv_header();
std::string report_csv_row(const SystemConfig& cfg, const MetricsReport& rep);

// Unified sweep schema: engine tag, config fields, estimates and (for sim
// rows) standard errors; analysis rows leave the SE cells empty.
std::string sweep_csv_header();
std::string sweep_csv_row(const SystemConfig& cfg, const MetricsReport& rep);
std::string sweep_csv_row(const SystemConfig& cfg, const McEstimate& est);

std::string outage_csv(const OutageTable& table);
/// Full canonical transition matrix (n+1 x n+1) of one chain as CSV.
std::string chain_csv(const AbsorbingChain& chain);

std::string opt_sweep_csv(const OptResult& res, const std::string& variable);

/// Per-slot JSON-lines record (detail trace).
std::string trace_jsonl(const SlotTrace& trace);

/// Engine cross-validation: one z-scored row per metric. The analytical
/// side is evaluated with the mean UE power aligned to the simulated
/// placement, so the comparison isolates protocol/PHY agreement from
/// placement sampling noise.
struct ValidationRow {
  std::string metric;
  double analytical = 0.0;
  double estimate = 0.0;
  double se = 0.0;
  double z = 0.0;       // NaN when se == 0 and the difference vanishes
  bool flagged = false; // |z| > 3
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::uint64_t n_slots = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  ChannelMode mode = ChannelMode::iid;
  double frac_snr_below_10 = 0.0;
  bool any_flagged = false;
};

ValidationReport validate_engines(const SystemConfig& cfg, std::uint64_t n_slots,
                                  ChannelMode mode, std::uint64_t seed, int workers);

nlohmann::ordered_json validation_json(const SystemConfig& cfg, const ValidationReport& rep);

}  // namespace gfurllc
