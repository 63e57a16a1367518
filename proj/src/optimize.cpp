// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/optimize.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "gfurllc/metrics.hpp"
#include "gfurllc/parallel.hpp"

namespace gfurllc {

namespace {

// Memoizes evaluator calls; no candidate is ever evaluated twice, which is
// what keeps the dichotomy + exhaustive-search composition within its
// complexity budget.
class Memo {
 public:
  explicit Memo(const Evaluator& eval) : eval_(eval) {}

  EvalPoint at(int x) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (const auto it = cache_.find(x); it != cache_.end()) return it->second;
    }
    const EvalPoint p = eval_(x);
    std::lock_guard<std::mutex> lock(mu_);
    const auto [it, inserted] = cache_.try_emplace(x, p);
    if (inserted) ++count_;
    return it->second;
  }

  int count() const { return count_; }

  std::vector<SweepRecord> sweep(double eps_max) const {
    std::vector<SweepRecord> out;
    out.reserve(cache_.size());
    for (const auto& [cand, pt] : cache_) {
      out.push_back({cand, pt.epsilon, pt.eta, pt.epsilon <= eps_max});
    }
    return out;
  }

 private:
  const Evaluator& eval_;
  std::map<int, EvalPoint> cache_;
  mutable std::mutex mu_;
  int count_ = 0;
};

void check_monotone(double eps_small_end, double eps_large_end, const char* direction) {
  const double slack = 1e-12 + 1e-9 * std::fabs(eps_small_end);
  if (eps_large_end + slack < eps_small_end) {
    throw NonMonotoneBracket(std::string("epsilon is not ") + direction +
                             " across the search bracket; refusing to bisect");
  }
}

// Scans [lo, hi], all candidates evaluated (in parallel when asked), and
// returns the feasible eta-argmax with smallest-candidate tie-breaking.
void exhaustive_scan(Memo& memo, double eps_max, int lo, int hi, int workers, OptResult& out) {
  const int count = hi - lo + 1;
  if (count <= 0) return;
  parallel_for_blocks(static_cast<std::uint64_t>(count), workers,
                      [&](std::uint64_t idx) { memo.at(lo + static_cast<int>(idx)); });
  out.best_value = 0;
  out.best_eta = -std::numeric_limits<double>::infinity();
  for (int x = lo; x <= hi; ++x) {
    const EvalPoint p = memo.at(x);
    if (p.epsilon <= eps_max && p.eta > out.best_eta) {
      out.best_eta = p.eta;
      out.best_value = x;
    }
  }
}

}  // namespace

int find_largest_feasible(const Evaluator& eval, double eps_max, int upper, int* evaluations) {
  Memo memo(eval);
  auto done = [&](int bound) {
    if (evaluations) *evaluations = memo.count();
    return bound;
  };
  if (upper < 1) upper = 1;
  if (upper > 1) {
    // Endpoint spot check first: concluding anything from a bracket whose
    // direction is wrong would return a wrong bound.
    check_monotone(memo.at(1).epsilon, memo.at(upper).epsilon, "nondecreasing");
  }
  if (memo.at(1).epsilon > eps_max) return done(0);
  if (upper == 1) return done(1);
  if (memo.at(upper).epsilon <= eps_max) return done(upper);
  int lo = 1, hi = upper;  // lo feasible, hi infeasible
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (memo.at(mid).epsilon <= eps_max) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return done(lo);
}

OptResult optimize_increasing(const Evaluator& eval, double eps_max, int upper, int workers) {
  Memo memo(eval);
  OptResult res;
  if (upper < 1) upper = 1;
  if (upper > 1) {
    check_monotone(memo.at(1).epsilon, memo.at(upper).epsilon, "nondecreasing");
  }
  if (memo.at(1).epsilon > eps_max) {
    res.feasible = false;
    res.evaluations = memo.count();
    res.sweep = memo.sweep(eps_max);
    return res;
  }
  int bound = 1;
  if (upper > 1) {
    if (memo.at(upper).epsilon <= eps_max) {
      bound = upper;
    } else {
      int lo = 1, hi = upper;
      while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (memo.at(mid).epsilon <= eps_max ? lo : hi) = mid;
      }
      bound = lo;
    }
  }
  res.feasible = true;
  res.feasible_bound = bound;
  exhaustive_scan(memo, eps_max, 1, bound, workers, res);
  res.evaluations = memo.count();
  res.sweep = memo.sweep(eps_max);
  return res;
}

OptResult optimize_decreasing(const Evaluator& eval, double eps_max, int lower, int upper,
                              int workers) {
  Memo memo(eval);
  OptResult res;
  if (lower < 1) lower = 1;
  if (upper < lower) upper = lower;
  if (upper > lower) {
    check_monotone(memo.at(upper).epsilon, memo.at(lower).epsilon, "nonincreasing");
  }
  if (memo.at(upper).epsilon > eps_max) {
    res.feasible = false;
    res.evaluations = memo.count();
    res.sweep = memo.sweep(eps_max);
    return res;
  }
  int bound = upper;
  if (upper > lower) {
    if (memo.at(lower).epsilon <= eps_max) {
      bound = lower;
    } else {
      int lo = lower, hi = upper;  // lo infeasible, hi feasible
      while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (memo.at(mid).epsilon <= eps_max ? hi : lo) = mid;
      }
      bound = hi;
    }
  }
  res.feasible = true;
  res.feasible_bound = bound;
  exhaustive_scan(memo, eps_max, bound, upper, workers, res);
  res.evaluations = memo.count();
  res.sweep = memo.sweep(eps_max);
  return res;
}

namespace {

int n_upper_bracket(const SystemConfig& cfg) {
  // Empirical initial bound on the UE count: 2M/mu.
  const double u = 2.0 * cfg.n_antennas / cfg.arrival_prob;
  return std::max(1, static_cast<int>(std::ceil(u)));
}

Evaluator make_n_evaluator(const AnalysisEngine& engine) {
  return [&engine](int n) {
    const MetricsReport r = engine.report_for_n_ues(n);
    return EvalPoint{r.epsilon, r.efficiency_bpj};
  };
}

}  // namespace

int find_n_max(const SystemConfig& cfg, double eps_max) {
  cfg.validate();
  if (!(eps_max > 0.0 && eps_max < 1.0)) {
    throw std::invalid_argument("find_n_max: eps_max must lie in (0,1)");
  }
  if (!(cfg.arrival_prob > 0.0)) {
    throw std::invalid_argument("find_n_max: arrival probability must be positive");
  }
  AnalysisEngine engine(cfg);
  const Evaluator eval = make_n_evaluator(engine);
  return find_largest_feasible(eval, eps_max, n_upper_bracket(cfg));
}

OptResult optimize_n(const SystemConfig& cfg, double eps_max, int workers) {
  cfg.validate();
  if (!(eps_max > 0.0 && eps_max < 1.0)) {
    throw std::invalid_argument("optimize_n: eps_max must lie in (0,1)");
  }
  if (!(cfg.arrival_prob > 0.0)) {
    throw std::invalid_argument("optimize_n: arrival probability must be positive (eta undefined)");
  }
  AnalysisEngine engine(cfg);
  const Evaluator eval = make_n_evaluator(engine);
  return optimize_increasing(eval, eps_max, n_upper_bracket(cfg), workers);
}

OptResult optimize_m(const SystemConfig& cfg, double eps_max, int m_max, int workers) {
  cfg.validate();
  if (!(eps_max > 0.0 && eps_max < 1.0)) {
    throw std::invalid_argument("optimize_m: eps_max must lie in (0,1)");
  }
  if (m_max < 1) throw std::invalid_argument("optimize_m: m_max must be >= 1");
  if (!(cfg.arrival_prob > 0.0)) {
    throw std::invalid_argument("optimize_m: arrival probability must be positive (eta undefined)");
  }
  const Evaluator eval = [&cfg](int m) -> EvalPoint {
    if (m < 2) {
      // A single receive antenna is outside the system model; report it as
      // infeasible so the dichotomy settles on M >= 2.
      return {std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity()};
    }
    SystemConfig c = cfg;
    c.n_antennas = m;
    AnalysisEngine engine(c);
    const MetricsReport r = engine.report();
    return {r.epsilon, r.efficiency_bpj};
  };
  return optimize_decreasing(eval, eps_max, 1, m_max, workers);
}

}  // namespace gfurllc
