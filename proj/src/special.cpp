// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "gfurllc/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfurllc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2*pi)

// Acklam's rational approximation of the inverse standard-normal CDF.
// Accurate to ~1.15e-9 on its own; used only as the seed for Newton.
double inv_normal_cdf_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Series form of P(s,x), valid and fast for x < s+1.
double lower_gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int n = 0; n < 800; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
}

// Continued fraction (modified Lentz) for Q(s,x) = 1 - P(s,x), x >= s+1.
double upper_gamma_cf(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 800; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return h * std::exp(s * std::log(x) - x - std::lgamma(s));
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double inv_q(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("inv_q: probability must lie strictly inside (0,1)");
  }
  // Q(x) = p  <=>  Phi(x) = 1-p; seed with the rational approximation of
  // Phi^{-1}(1-p), mirrored for the small-p branch to avoid cancellation.
  double x = p < 0.5 ? -inv_normal_cdf_seed(p) : inv_normal_cdf_seed(1.0 - p);
  for (int it = 0; it < 3; ++it) {
    const double err = gaussian_q(x) - p;
    const double slope = normal_pdf(x);
    if (slope <= 0.0) break;
    x += err / slope;  // Q' = -pdf
  }
  return x;
}

double reg_lower_gamma(double shape, double x) {
  if (!(shape > 0.0)) throw std::domain_error("reg_lower_gamma: shape must be positive");
  if (x < 0.0) throw std::domain_error("reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < shape + 1.0) return lower_gamma_series(shape, x);
  return 1.0 - upper_gamma_cf(shape, x);
}

}  // namespace gfurllc
