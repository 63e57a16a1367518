// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <stdexcept>

namespace gfurllc {

/// Binomial pmf C(n,k) p^k (1-p)^(n-k), stable in the log domain with exact
/// handling of the p = 0 and p = 1 edges.
inline double binomial_pmf(int k, int n, double p) {
  if (k < 0 || n < 0 || k > n) {
    throw std::domain_error("binomial_pmf: need 0 <= k <= n");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binomial_pmf: p must lie in [0,1]");
  }
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_c + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace gfurllc
