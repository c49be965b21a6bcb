// SPDX-License-Identifier: Apache-2.0
//
// nomagee: energy-efficient beamforming for downlink MISO-NOMA systems
// Copyright (C) 2026 The nomagee authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NOMAGEE_LINEARIZE_HPP
#define NOMAGEE_LINEARIZE_HPP

#include <utility>

#include <Eigen/Dense>

#include "nomagee/conic.hpp"
#include "nomagee/scenario.hpp"

namespace nomagee {

// First-order expansion of sqrt(a b) around (a0, b0):
//   sqrt(a0 b0) + d_a (a - a0) + d_b (b - b0)
// Over-estimates sqrt(a b) everywhere on the positive orthant (concavity).
struct SqrtProductTangent {
    double a0 = 1.0;
    double b0 = 1.0;
    double at_expansion = 1.0; // sqrt(a0 b0)
    double d_a = 0.5;          // 0.5 sqrt(b0 / a0)
    double d_b = 0.5;          // 0.5 sqrt(a0 / b0)

    double operator()(double a, double b) const { return at_expansion + d_a * (a - a0) + d_b * (b - b0); }
    // Constant term of the plane in (a, b); zero up to rounding since sqrt(ab) is 1-homogeneous.
    double constant() const { return at_expansion - d_a * a0 - d_b * b0; }
    conic::Expr apply(const conic::Expr &a, const conic::Expr &b) const;
};

// Throws std::invalid_argument unless a0 > 0 and b0 > 0.
SqrtProductTangent linearize_sqrt_product(double a0, double b0);

// Real and imaginary part of h^H w as linear forms in the stacked reals
// [Re w; Im w] of length 2N.
struct StackedInnerProduct {
    Eigen::VectorXd re;
    Eigen::VectorXd im;
};
StackedInnerProduct stacked_inner_product(const CVec &h);

Eigen::VectorXd stack(const CVec &w);
CVec unstack(const Eigen::VectorXd &x);

// Affine under-estimator of |h^H w|^2 tangent at w0, in stacked reals:
//   |psi0|^2 + 2 psi0^T (psi(w) - psi0),  psi = (Re h^H w, Im h^H w).
struct AbsSqTangent {
    Eigen::VectorXd coeffs; // length 2N
    double constant = 0.0;

    double evaluate(const CVec &w) const { return coeffs.dot(stack(w)) + constant; }
    conic::Expr apply(const conic::Variable &w) const;
};

// Throws std::invalid_argument on a length mismatch.
AbsSqTangent linearize_abs_sq(const CVec &h, const CVec &w0);

// (Re h^H w, Im h^H w) for a stacked variable w of dimension 2N.
std::pair<conic::Expr, conic::Expr> inner_product_expr(const CVec &h, const conic::Variable &w);

} // namespace nomagee

#endif
