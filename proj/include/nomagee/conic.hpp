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

#ifndef NOMAGEE_CONIC_HPP
#define NOMAGEE_CONIC_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Backend-agnostic conic programs over real scalar variables.
//
// A program is built from affine expressions (Expr) over registered variables and
// four cone families:
//   linear    g(x) >= 0
//   soc       ||u(x)||_2 <= t(x)
//   exp2      z(x) >= 2^q(x)
//   psd       symmetric matrix of affine entries is positive semidefinite
//
// Solving is delegated to a Backend. The default backend is a primal barrier
// interior-point method; see barrier.cpp.
namespace nomagee::conic {

// Affine scalar expression: constant + sum_j coeff_j * x[index_j].
class Expr {
  public:
    Expr() = default;
    Expr(double constant) : constant_(constant) {} // NOLINT: implicit on purpose, constants are expressions

    static Expr term(int index, double coeff = 1.0);

    double constant() const { return constant_; }
    const std::vector<std::pair<int, double>> &terms() const { return terms_; }
    bool is_constant() const { return terms_.empty(); }

    // Merges duplicate indices, drops exact zeros, sorts by index.
    Expr &normalize();
    Expr normalized() const;

    double evaluate(std::span<const double> x) const;
    int max_index() const;

    Expr &operator+=(const Expr &other);
    Expr &operator-=(const Expr &other);
    Expr &operator*=(double s);

    friend Expr operator+(Expr a, const Expr &b) { return a += b; }
    friend Expr operator-(Expr a, const Expr &b) { return a -= b; }
    friend Expr operator-(Expr a) { return a *= -1.0; }
    friend Expr operator*(Expr a, double s) { return a *= s; }
    friend Expr operator*(double s, Expr a) { return a *= s; }
    friend Expr operator/(Expr a, double s) { return a *= 1.0 / s; }

  private:
    double constant_ = 0.0;
    std::vector<std::pair<int, double>> terms_;
};

// Handle to a block of `dim` consecutive scalar variables.
struct Variable {
    int offset = 0;
    int dim = 0;

    Expr operator[](int i) const;
    Expr scalar() const { return (*this)[0]; }
};

enum class Sense { minimize, maximize };
enum class ConeKind { linear, soc, exp2, psd };
enum class Status { optimal, infeasible, unbounded, numerical_failure, iteration_limit };

std::string to_string(Status s);
std::string to_string(ConeKind k);

// Row layout per kind:
//   linear: {g}              g >= 0
//   soc:    {t, u_1..u_m}    ||u|| <= t
//   exp2:   {z, q}           z >= 2^q
//   psd:    upper triangle of an order-n symmetric matrix, row-major (a <= b)
struct Constraint {
    ConeKind kind = ConeKind::linear;
    std::vector<Expr> rows;
    int order = 0; // psd only
    std::string label;

    // Barrier degree of the cone (1, 2, 2, n).
    int degree() const;
    // Amount by which the point violates the constraint; 0 when satisfied.
    double violation(std::span<const double> x) const;
};

using ConstraintId = std::size_t;

class Program {
  public:
    Variable add_variable(const std::string &name, int dim = 1);

    void set_objective(Sense sense, Expr objective);
    void minimize(Expr objective) { set_objective(Sense::minimize, std::move(objective)); }
    void maximize(Expr objective) { set_objective(Sense::maximize, std::move(objective)); }

    // lhs <= rhs and lhs >= rhs.
    ConstraintId add_le(const Expr &lhs, const Expr &rhs, std::string label = {});
    ConstraintId add_ge(const Expr &lhs, const Expr &rhs, std::string label = {});
    // ||lhs||_2 <= rhs.
    ConstraintId add_soc(const Expr &rhs, std::vector<Expr> lhs, std::string label = {});
    // (a + b)/2 >= || ((a - b)/2, u) ||, i.e. a*b >= ||u||^2 with a, b >= 0.
    ConstraintId add_rotated_soc(const Expr &a, const Expr &b, const std::vector<Expr> &u, std::string label = {});
    // z >= 2^q.
    ConstraintId add_exp_bound(const Expr &z, const Expr &q, std::string label = {});
    // Symmetric square matrix of affine entries is PSD.
    ConstraintId add_psd(const std::vector<std::vector<Expr>> &matrix, std::string label = {});

    // Pass-through starting point for the backend; it need not be feasible.
    void set_initial_point(std::vector<double> x);

    int num_variables() const { return num_vars_; }
    std::size_t num_constraints() const { return constraints_.size(); }
    std::size_t num_constraints(ConeKind kind) const;
    const std::vector<Constraint> &constraints() const { return constraints_; }
    Sense sense() const { return sense_; }
    const Expr &objective() const { return objective_; }
    const std::vector<double> &initial_point() const { return initial_point_; }
    bool uses(ConeKind kind) const { return num_constraints(kind) > 0; }

    const std::string &variable_name(std::size_t block) const { return names_.at(block); }
    const std::vector<Variable> &variables() const { return blocks_; }

    // Largest violation over all constraints at x.
    double max_violation(std::span<const double> x) const;

    // Human-readable listing: variables, objective, one constraint per line.
    std::string dump() const;

  private:
    ConstraintId push(Constraint c);
    void check_indices(const Expr &e) const;

    int num_vars_ = 0;
    std::vector<std::string> names_;
    std::vector<Variable> blocks_;
    Sense sense_ = Sense::minimize;
    Expr objective_;
    std::vector<Constraint> constraints_;
    std::vector<double> initial_point_;
};

struct SolveResult {
    Status status = Status::numerical_failure;
    double objective_value = 0.0;
    std::vector<double> values; // present iff status == optimal
    int solver_iterations = 0;

    bool optimal() const { return status == Status::optimal; }
    double value(const Expr &e) const;
    std::vector<double> value(const Variable &v) const;
};

struct SolverOptions {
    double gap_tolerance = 1e-9;    // absolute, scaled by max(1, |objective|)
    double newton_tolerance = 1e-9; // lambda^2 / 2
    double barrier_growth = 20.0;
    int max_newton_steps = 2000;
    double ball_radius = 1e9; // artificial bound ||x|| <= R (1 + ||x0||), unboundedness detector
};

class CapabilityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Backend {
  public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;
    virtual bool supports(ConeKind kind) const = 0;
    // Throws CapabilityError when the program uses an unsupported cone.
    virtual SolveResult solve(const Program &program) const = 0;
};

// Known names: "barrier" (all cones), "barrier-socp" (linear + soc only).
std::unique_ptr<Backend> make_backend(const std::string &name, SolverOptions options = {});
// Backend selected by NOMA_GEE_BACKEND, "barrier" when unset.
const Backend &default_backend();

SolveResult solve(const Program &program);
SolveResult solve(const Program &program, const Backend &backend);

} // namespace nomagee::conic

#endif
