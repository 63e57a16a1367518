// SPDX-License-Identifier: Apache-2.0
//
// gfurllc — analysis and simulation toolkit for MIMO-aided grant-free uplink URLLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

namespace gfurllc {

/// Gaussian tail probability Q(x) = P(Z > x) for Z ~ N(0,1).
double gaussian_q(double x);

/// Inverse of the Gaussian tail: returns x with Q(x) = p for p in (0,1).
/// Rational initial guess refined by Newton steps on erfc; relative error
/// below 1e-12 over the full open interval.
double inv_q(double p);

/// Regularized lower incomplete gamma P(shape, x) = γ(shape,x)/Γ(shape).
/// Series expansion for x < shape+1, Lentz continued fraction otherwise.
double reg_lower_gamma(double shape, double x);

}  // namespace gfurllc
