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

#include "nomagee/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace nomagee::conic {

Expr Expr::term(int index, double coeff) {
    if (index < 0)
        throw std::invalid_argument("Expr::term: negative variable index");
    Expr e;
    e.terms_.emplace_back(index, coeff);
    return e;
}

Expr &Expr::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    merged.reserve(terms_.size());
    for (const auto &[idx, c] : terms_) {
        if (!merged.empty() && merged.back().first == idx)
            merged.back().second += c;
        else
            merged.emplace_back(idx, c);
    }
    std::erase_if(merged, [](const auto &t) { return t.second == 0.0; });
    terms_ = std::move(merged);
    return *this;
}

Expr Expr::normalized() const {
    Expr e = *this;
    return e.normalize();
}

double Expr::evaluate(std::span<const double> x) const {
    double v = constant_;
    for (const auto &[idx, c] : terms_)
        v += c * x[static_cast<std::size_t>(idx)];
    return v;
}

int Expr::max_index() const {
    int m = -1;
    for (const auto &t : terms_)
        m = std::max(m, t.first);
    return m;
}

Expr &Expr::operator+=(const Expr &other) {
    constant_ += other.constant_;
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

Expr &Expr::operator-=(const Expr &other) {
    constant_ -= other.constant_;
    for (const auto &[idx, c] : other.terms_)
        terms_.emplace_back(idx, -c);
    return *this;
}

Expr &Expr::operator*=(double s) {
    constant_ *= s;
    for (auto &t : terms_)
        t.second *= s;
    return *this;
}

Expr Variable::operator[](int i) const {
    if (i < 0 || i >= dim)
        throw std::out_of_range("Variable: element index out of range");
    return Expr::term(offset + i);
}

std::string to_string(Status s) {
    switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::numerical_failure: return "numerical_failure";
    case Status::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

std::string to_string(ConeKind k) {
    switch (k) {
    case ConeKind::linear: return "linear";
    case ConeKind::soc: return "soc";
    case ConeKind::exp2: return "exp2";
    case ConeKind::psd: return "psd";
    }
    return "unknown";
}

int Constraint::degree() const {
    switch (kind) {
    case ConeKind::linear: return 1;
    case ConeKind::soc: return 2;
    case ConeKind::exp2: return 2;
    case ConeKind::psd: return order;
    }
    return 0;
}

double Constraint::violation(std::span<const double> x) const {
    switch (kind) {
    case ConeKind::linear: return std::max(0.0, -rows[0].evaluate(x));
    case ConeKind::soc: {
        double ss = 0.0;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const double u = rows[r].evaluate(x);
            ss += u * u;
        }
        return std::max(0.0, std::sqrt(ss) - rows[0].evaluate(x));
    }
    case ConeKind::exp2: {
        const double z = rows[0].evaluate(x);
        const double q = rows[1].evaluate(x);
        return std::max(0.0, std::exp2(q) - z);
    }
    case ConeKind::psd: {
        Eigen::MatrixXd m(order, order);
        std::size_t r = 0;
        for (int a = 0; a < order; ++a)
            for (int b = a; b < order; ++b) {
                m(a, b) = m(b, a) = rows[r++].evaluate(x);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        return std::max(0.0, -es.eigenvalues().minCoeff());
    }
    }
    return 0.0;
}

Variable Program::add_variable(const std::string &name, int dim) {
    if (dim < 1)
        throw std::invalid_argument("add_variable: dimension must be positive");
    if (std::find(names_.begin(), names_.end(), name) != names_.end())
        throw std::invalid_argument("add_variable: duplicate variable name '" + name + "'");
    Variable v{num_vars_, dim};
    num_vars_ += dim;
    names_.push_back(name);
    blocks_.push_back(v);
    return v;
}

void Program::check_indices(const Expr &e) const {
    if (e.max_index() >= num_vars_)
        throw std::invalid_argument("constraint references an unregistered variable");
}

void Program::set_objective(Sense sense, Expr objective) {
    check_indices(objective);
    sense_ = sense;
    objective_ = objective.normalize();
}

ConstraintId Program::push(Constraint c) {
    for (auto &r : c.rows) {
        check_indices(r);
        r.normalize();
    }
    constraints_.push_back(std::move(c));
    return constraints_.size() - 1;
}

ConstraintId Program::add_le(const Expr &lhs, const Expr &rhs, std::string label) {
    return push({ConeKind::linear, {rhs - lhs}, 0, std::move(label)});
}

ConstraintId Program::add_ge(const Expr &lhs, const Expr &rhs, std::string label) {
    return push({ConeKind::linear, {lhs - rhs}, 0, std::move(label)});
}

ConstraintId Program::add_soc(const Expr &rhs, std::vector<Expr> lhs, std::string label) {
    Expr t = rhs.normalized();
    if (t.is_constant() && t.constant() < 0.0)
        throw std::invalid_argument("add_soc: right-hand side is structurally negative");
    Constraint c{ConeKind::soc, {}, 0, std::move(label)};
    c.rows.reserve(lhs.size() + 1);
    c.rows.push_back(std::move(t));
    for (auto &e : lhs)
        c.rows.push_back(std::move(e));
    return push(std::move(c));
}

ConstraintId Program::add_rotated_soc(const Expr &a, const Expr &b, const std::vector<Expr> &u, std::string label) {
    std::vector<Expr> lhs;
    lhs.reserve(u.size() + 1);
    lhs.push_back(0.5 * (a - b));
    lhs.insert(lhs.end(), u.begin(), u.end());
    return add_soc(0.5 * (a + b), std::move(lhs), std::move(label));
}

ConstraintId Program::add_exp_bound(const Expr &z, const Expr &q, std::string label) {
    return push({ConeKind::exp2, {z, q}, 0, std::move(label)});
}

ConstraintId Program::add_psd(const std::vector<std::vector<Expr>> &matrix, std::string label) {
    const std::size_t n = matrix.size();
    if (n == 0)
        throw std::invalid_argument("add_psd: empty matrix");
    for (const auto &row : matrix)
        if (row.size() != n)
            throw std::invalid_argument("add_psd: matrix is not square");
    Constraint c{ConeKind::psd, {}, static_cast<int>(n), std::move(label)};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            Expr upper = matrix[a][b].normalized();
            Expr lower = matrix[b][a].normalized();
            if (upper.constant() != lower.constant() || upper.terms() != lower.terms())
                throw std::invalid_argument("add_psd: matrix is not symmetric");
            c.rows.push_back(std::move(upper));
        }
    }
    return push(std::move(c));
}

void Program::set_initial_point(std::vector<double> x) {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("set_initial_point: size does not match the variable count");
    initial_point_ = std::move(x);
}

std::size_t Program::num_constraints(ConeKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(constraints_.begin(), constraints_.end(), [kind](const Constraint &c) { return c.kind == kind; }));
}

double Program::max_violation(std::span<const double> x) const {
    double v = 0.0;
    for (const auto &c : constraints_)
        v = std::max(v, c.violation(x));
    return v;
}

namespace {

std::string variable_label(const std::vector<std::string> &names, const std::vector<Variable> &blocks, int index) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (index >= blocks[b].offset && index < blocks[b].offset + blocks[b].dim) {
            if (blocks[b].dim == 1)
                return names[b];
            return names[b] + "[" + std::to_string(index - blocks[b].offset) + "]";
        }
    }
    return "x" + std::to_string(index);
}

std::string format_expr(const Expr &e, const std::vector<std::string> &names, const std::vector<Variable> &blocks) {
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto &[idx, c] : e.terms()) {
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        const double a = std::abs(c);
        if (a != 1.0)
            os << a << "*";
        os << variable_label(names, blocks, idx);
    }
    if (first)
        os << e.constant();
    else if (e.constant() != 0.0)
        os << (e.constant() < 0 ? " - " : " + ") << std::abs(e.constant());
    return os.str();
}

} // namespace

std::string Program::dump() const {
    std::ostringstream os;
    os << "variables " << num_vars_ << "\n";
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        os << "  " << names_[b] << " dim=" << blocks_[b].dim << "\n";
    os << (sense_ == Sense::minimize ? "minimize " : "maximize ") << format_expr(objective_, names_, blocks_) << "\n";
    os << "constraints " << constraints_.size() << "\n";
    for (const auto &c : constraints_) {
        os << "  [" << to_string(c.kind) << "]";
        if (!c.label.empty())
            os << " " << c.label;
        os << ": ";
        switch (c.kind) {
        case ConeKind::linear: os << format_expr(c.rows[0], names_, blocks_) << " >= 0"; break;
        case ConeKind::soc:
            os << "|| (";
            for (std::size_t r = 1; r < c.rows.size(); ++r)
                os << (r > 1 ? ", " : "") << format_expr(c.rows[r], names_, blocks_);
            os << ") || <= " << format_expr(c.rows[0], names_, blocks_);
            break;
        case ConeKind::exp2:
            os << format_expr(c.rows[0], names_, blocks_) << " >= 2^(" << format_expr(c.rows[1], names_, blocks_) << ")";
            break;
        case ConeKind::psd:
            os << "psd order " << c.order << " {";
            for (std::size_t r = 0; r < c.rows.size(); ++r)
                os << (r ? "; " : "") << format_expr(c.rows[r], names_, blocks_);
            os << "}";
            break;
        }
        os << "\n";
    }
    return os.str();
}

double SolveResult::value(const Expr &e) const {
    if (values.empty())
        throw std::logic_error("SolveResult::value: no primal values (status is not optimal)");
    return e.evaluate(values);
}

std::vector<double> SolveResult::value(const Variable &v) const {
    if (values.empty())
        throw std::logic_error("SolveResult::value: no primal values (status is not optimal)");
    return {values.begin() + v.offset, values.begin() + v.offset + v.dim};
}

const Backend &default_backend() {
    static const std::unique_ptr<Backend> backend = [] {
        const char *env = std::getenv("NOMA_GEE_BACKEND");
        return make_backend(env && *env ? env : "barrier");
    }();
    return *backend;
}

SolveResult solve(const Program &program) { return default_backend().solve(program); }

SolveResult solve(const Program &program, const Backend &backend) { return backend.solve(program); }

} // namespace nomagee::conic
