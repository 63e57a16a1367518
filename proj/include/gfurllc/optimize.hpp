// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "gfurllc/config.hpp"

namespace gfurllc {

/// Raised when the endpoint spot check contradicts the assumed monotone
/// direction of epsilon over the search bracket.
class NonMonotoneBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (epsilon, eta) of one integer candidate.
struct EvalPoint {
  double epsilon = 0.0;
  double eta = 0.0;
};
using Evaluator = std::function<EvalPoint(int)>;

struct SweepRecord {
  int candidate = 0;
  double epsilon = 0.0;
  double eta = 0.0;
  bool feasible = false;
};

struct OptResult {
  bool feasible = false;
  int best_value = 0;       // N* or M*; 0 when infeasible
  double best_eta = 0.0;
  int feasible_bound = 0;   // N^max or M^min; 0 when infeasible
  int evaluations = 0;      // distinct candidates evaluated
  std::vector<SweepRecord> sweep;
};

/// Largest N in [1, upper] with eps(N) <= eps_max, by bisection under the
/// premise that eps is nondecreasing (spot-checked at the endpoints).
/// Returns 0 when even N = 1 is infeasible.
int find_n_max(const SystemConfig& cfg, double eps_max);

/// Maximize eta over N subject to eps(N) <= eps_max: bisection for the
/// feasible bound, then an exhaustive scan with memoized evaluations.
/// Upper bracket 2M/mu; ties resolve to the smallest N.
OptResult optimize_n(const SystemConfig& cfg, double eps_max, int workers = 1);

/// Maximize eta over M in [1, m_max] subject to eps(M) <= eps_max, with eps
/// nonincreasing in M: bisection for M^min, exhaustive scan above it.
OptResult optimize_m(const SystemConfig& cfg, double eps_max, int m_max, int workers = 1);

/// Generic cores used by the config-backed wrappers and by oracle-injection
/// tests. `upper`/brackets are inclusive.
int find_largest_feasible(const Evaluator& eval, double eps_max, int upper,
                          int* evaluations = nullptr);
OptResult optimize_increasing(const Evaluator& eval, double eps_max, int upper, int workers = 1);
OptResult optimize_decreasing(const Evaluator& eval, double eps_max, int lower, int upper,
                              int workers = 1);

}  // namespace gfurllc
