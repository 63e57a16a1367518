// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace gfurllc {

/// Reusable buffers for the ZF Gram inversion; one per worker thread.
struct GramWorkspace {
  std::vector<std::complex<double>> gram;   // n*n row-major, lower triangle used
  std::vector<std::complex<double>> column; // forward-solve scratch
  void reserve(int n) {
    gram.resize(static_cast<std::size_t>(n) * n);
    column.resize(n);
  }
};

/// Diagonal of (H^H H)^{-1} for a column-major m x n matrix H (m >= n):
/// forms the Hermitian Gram matrix, factors it in place (Cholesky), then
/// accumulates the squared norms of the forward-solved unit columns.
/// Returns false when the Gram matrix is numerically singular.
inline bool gram_inverse_diagonal(const std::complex<double>* h, int m, int n,
                                  double* out_diag, GramWorkspace& ws) {
  using cd = std::complex<double>;
  ws.reserve(n);
  cd* g = ws.gram.data();

  // Lower triangle of G = H^H H; column j of H starts at h + j*m.
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) {
      const cd* hr = h + static_cast<std::size_t>(r) * m;
      const cd* hc = h + static_cast<std::size_t>(c) * m;
      cd acc{0.0, 0.0};
      for (int i = 0; i < m; ++i) acc += std::conj(hr[i]) * hc[i];
      g[static_cast<std::size_t>(r) * n + c] = acc;
    }
  }

  // In-place Cholesky G = L L^H over the lower triangle.
  for (int j = 0; j < n; ++j) {
    double d = g[static_cast<std::size_t>(j) * n + j].real();
    for (int k = 0; k < j; ++k) d -= std::norm(g[static_cast<std::size_t>(j) * n + k]);
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    g[static_cast<std::size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      cd acc = g[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k) {
        acc -= g[static_cast<std::size_t>(i) * n + k] *
               std::conj(g[static_cast<std::size_t>(j) * n + k]);
      }
      g[static_cast<std::size_t>(i) * n + j] = acc / ljj;
    }
  }

  // (G^{-1})_{jj} = || L^{-1} e_j ||^2 via one forward solve per column.
  cd* x = ws.column.data();
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    x[j] = 1.0 / g[static_cast<std::size_t>(j) * n + j].real();
    sum += std::norm(x[j]);
    for (int i = j + 1; i < n; ++i) {
      cd acc{0.0, 0.0};
      for (int k = j; k < i; ++k) acc += g[static_cast<std::size_t>(i) * n + k] * x[k];
      x[i] = -acc / g[static_cast<std::size_t>(i) * n + i].real();
      sum += std::norm(x[i]);
    }
    out_diag[j] = sum;
  }
  return true;
}

}  // namespace gfurllc
