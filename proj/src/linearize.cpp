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

#include "nomagee/linearize.hpp"

#include <cmath>
#include <stdexcept>

namespace nomagee {

SqrtProductTangent linearize_sqrt_product(double a0, double b0) {
    if (!(a0 > 0.0) || !(b0 > 0.0))
        throw std::invalid_argument("linearize_sqrt_product: expansion point must be positive");
    SqrtProductTangent t;
    t.a0 = a0;
    t.b0 = b0;
    t.at_expansion = std::sqrt(a0 * b0);
    t.d_a = 0.5 * std::sqrt(b0 / a0);
    t.d_b = 0.5 * std::sqrt(a0 / b0);
    return t;
}

conic::Expr SqrtProductTangent::apply(const conic::Expr &a, const conic::Expr &b) const {
    return conic::Expr(at_expansion - d_a * a0 - d_b * b0) + d_a * a + d_b * b;
}

StackedInnerProduct stacked_inner_product(const CVec &h) {
    // h = c + jd, w = a + jb:  h^H w = (c'a + d'b) + j(c'b - d'a)
    const auto n = h.size();
    StackedInnerProduct s{Eigen::VectorXd(2 * n), Eigen::VectorXd(2 * n)};
    s.re << h.real(), h.imag();
    s.im << -h.imag(), h.real();
    return s;
}

Eigen::VectorXd stack(const CVec &w) {
    Eigen::VectorXd x(2 * w.size());
    x << w.real(), w.imag();
    return x;
}

CVec unstack(const Eigen::VectorXd &x) {
    const auto n = x.size() / 2;
    CVec w(n);
    for (Eigen::Index i = 0; i < n; ++i)
        w(i) = {x(i), x(n + i)};
    return w;
}

AbsSqTangent linearize_abs_sq(const CVec &h, const CVec &w0) {
    if (h.size() != w0.size())
        throw std::invalid_argument("linearize_abs_sq: dimension mismatch");
    const auto ip = stacked_inner_product(h);
    const std::complex<double> psi0 = h.dot(w0);
    AbsSqTangent t;
    t.coeffs = 2.0 * (psi0.real() * ip.re + psi0.imag() * ip.im);
    t.constant = -std::norm(psi0);
    return t;
}

namespace {

conic::Expr linear_form(const Eigen::VectorXd &coeffs, const conic::Variable &w) {
    if (coeffs.size() != w.dim)
        throw std::invalid_argument("linear form length does not match the variable dimension");
    conic::Expr e;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        if (coeffs(i) != 0.0)
            e += conic::Expr::term(w.offset + static_cast<int>(i), coeffs(i));
    return e;
}

} // namespace

conic::Expr AbsSqTangent::apply(const conic::Variable &w) const { return linear_form(coeffs, w) + constant; }

std::pair<conic::Expr, conic::Expr> inner_product_expr(const CVec &h, const conic::Variable &w) {
    const auto ip = stacked_inner_product(h);
    return {linear_form(ip.re, w), linear_form(ip.im, w)};
}

} // namespace nomagee
