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

// Primal barrier interior-point backend.
//
// Phase I minimizes a common shift s with g_i(x) + s e_i in K_i until s < 0
// (strictly feasible) or a positive lower bound on s proves infeasibility.
// Phase II follows the central path of t c'x + phi(x) with damped Newton
// centering. Every problem carries an artificial ball ||x|| <= R; an optimum
// on the ball is reported as unbounded.
//
// Barriers (degree in parentheses):
//   linear  -log g                                (1)
//   soc     -log(t^2 - ||u||^2)                   (2)
//   exp2    -log(ln z - q ln 2) - log z           (2)
//   psd     -log det M                            (n)

#include "nomagee/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace nomagee::conic {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kLn2 = 0.69314718055994530942;

struct Block {
    ConeKind kind = ConeKind::linear;
    int order = 0;
    std::vector<int> vars; // local column -> global variable index
    MatrixXd A;            // rows x vars
    VectorXd b;
    MatrixXd AtJA;         // soc only: A' diag(-1, 1, ..., 1) A
    mutable VectorXd y;    // scratch, rows
    mutable VectorXd v;    // scratch, vars
};

bool is_shift_row(const Constraint &c, std::size_t r, int &psd_a, int &psd_b) {
    switch (c.kind) {
    case ConeKind::linear:
    case ConeKind::soc:
    case ConeKind::exp2: return r == 0;
    case ConeKind::psd: {
        std::size_t k = 0;
        for (int a = 0; a < c.order; ++a)
            for (int b = a; b < c.order; ++b, ++k)
                if (k == r) {
                    psd_a = a;
                    psd_b = b;
                    return a == b;
                }
        return false;
    }
    }
    return false;
}

// shift_var >= 0 adds a phase-I column; shift adds a constant on the shift rows.
std::vector<Block> build_blocks(const Program &program, int shift_var, double shift) {
    std::vector<Block> blocks;
    blocks.reserve(program.num_constraints());
    for (const auto &c : program.constraints()) {
        Block blk;
        blk.kind = c.kind;
        blk.order = c.order;
        for (const auto &row : c.rows)
            for (const auto &t : row.terms())
                blk.vars.push_back(t.first);
        if (shift_var >= 0)
            blk.vars.push_back(shift_var);
        std::sort(blk.vars.begin(), blk.vars.end());
        blk.vars.erase(std::unique(blk.vars.begin(), blk.vars.end()), blk.vars.end());
        const auto local = [&](int g) {
            return static_cast<int>(std::lower_bound(blk.vars.begin(), blk.vars.end(), g) - blk.vars.begin());
        };
        const int rows = static_cast<int>(c.rows.size());
        blk.A = MatrixXd::Zero(rows, static_cast<int>(blk.vars.size()));
        blk.b = VectorXd::Zero(rows);
        for (int r = 0; r < rows; ++r) {
            const Expr &e = c.rows[static_cast<std::size_t>(r)];
            blk.b(r) = e.constant();
            for (const auto &[idx, coeff] : e.terms())
                blk.A(r, local(idx)) += coeff;
            int pa = 0, pb = 0;
            if (is_shift_row(c, static_cast<std::size_t>(r), pa, pb)) {
                blk.b(r) += shift;
                if (shift_var >= 0)
                    blk.A(r, local(shift_var)) += 1.0;
            }
        }
        if (blk.kind == ConeKind::soc) {
            VectorXd j = VectorXd::Ones(rows);
            j(0) = -1.0;
            blk.AtJA = blk.A.transpose() * j.asDiagonal() * blk.A;
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

// Barrier of one cone at y. Returns false outside the interior.
bool cone_barrier(ConeKind kind, int order, const VectorXd &y, double &phi, VectorXd *g, MatrixXd *H) {
    const int m = static_cast<int>(y.size());
    switch (kind) {
    case ConeKind::linear: {
        if (!(y(0) > 0.0))
            return false;
        phi = -std::log(y(0));
        if (g) {
            (*g)(0) = -1.0 / y(0);
            (*H)(0, 0) = 1.0 / (y(0) * y(0));
        }
        return true;
    }
    case ConeKind::soc: {
        const double t = y(0);
        if (!(t > 0.0))
            return false;
        const double un = y.tail(m - 1).norm();
        const double s = (t - un) * (t + un);
        if (!(t > un) || !(s > 0.0))
            return false;
        phi = -std::log(s);
        if (g) {
            VectorXd ds(m);
            ds(0) = 2.0 * t;
            ds.tail(m - 1) = -2.0 * y.tail(m - 1);
            *g = -ds / s;
            H->setZero();
            H->diagonal().setConstant(2.0 / s);
            (*H)(0, 0) = -2.0 / s;
            H->noalias() += ds * ds.transpose() / (s * s);
        }
        return true;
    }
    case ConeKind::exp2: {
        const double z = y(0);
        const double q = y(1);
        if (!(z > 0.0))
            return false;
        const double v = std::log(z) - kLn2 * q;
        if (!(v > 0.0))
            return false;
        phi = -std::log(v) - std::log(z);
        if (g) {
            const double dvz = 1.0 / z;
            const double dvq = -kLn2;
            (*g)(0) = -dvz / v - 1.0 / z;
            (*g)(1) = -dvq / v;
            (*H)(0, 0) = (1.0 / (z * z)) / v + dvz * dvz / (v * v) + 1.0 / (z * z);
            (*H)(0, 1) = (*H)(1, 0) = dvz * dvq / (v * v);
            (*H)(1, 1) = dvq * dvq / (v * v);
        }
        return true;
    }
    case ConeKind::psd: {
        MatrixXd M(order, order);
        int r = 0;
        for (int a = 0; a < order; ++a)
            for (int b = a; b < order; ++b, ++r)
                M(a, b) = M(b, a) = y(r);
        Eigen::LLT<MatrixXd> llt(M);
        if (llt.info() != Eigen::Success)
            return false;
        const auto &L = llt.matrixL();
        double logdet = 0.0;
        for (int a = 0; a < order; ++a) {
            const double d = L(a, a);
            if (!(d > 0.0) || !std::isfinite(d))
                return false;
            logdet += 2.0 * std::log(d);
        }
        phi = -logdet;
        if (g) {
            const MatrixXd S = llt.solve(MatrixXd::Identity(order, order));
            std::vector<std::pair<int, int>> idx;
            idx.reserve(static_cast<std::size_t>(m));
            for (int a = 0; a < order; ++a)
                for (int b = a; b < order; ++b)
                    idx.emplace_back(a, b);
            for (int i = 0; i < m; ++i) {
                const auto [a, b] = idx[static_cast<std::size_t>(i)];
                (*g)(i) = (a == b) ? -S(a, a) : -2.0 * S(a, b);
                for (int j = 0; j <= i; ++j) {
                    const auto [c, d] = idx[static_cast<std::size_t>(j)];
                    // tr(S E_ab S E_cd) summed over symmetric placements
                    double h = S(b, c) * S(d, a);
                    if (a != b)
                        h += S(a, c) * S(d, b);
                    if (c != d)
                        h += S(b, d) * S(c, a);
                    if (a != b && c != d)
                        h += S(a, d) * S(c, b);
                    (*H)(i, j) = (*H)(j, i) = h;
                }
            }
        }
        return true;
    }
    }
    return false;
}

class Barrier {
  public:
    Barrier(std::vector<Block> blocks, int n, VectorXd ball_center, double ball_radius)
        : blocks_(std::move(blocks)), n_(n), ball_dim_(static_cast<int>(ball_center.size())),
          center_(std::move(ball_center)), r2_(ball_radius * ball_radius) {
        degree_ = 1.0; // ball
        for (const auto &b : blocks_) {
            switch (b.kind) {
            case ConeKind::linear: degree_ += 1.0; break;
            case ConeKind::soc:
            case ConeKind::exp2: degree_ += 2.0; break;
            case ConeKind::psd: degree_ += b.order; break;
            }
        }
    }

    double degree() const { return degree_; }

    bool value(const VectorXd &x, double &phi) const {
        phi = 0.0;
        const double slack = r2_ - (x.head(ball_dim_) - center_).squaredNorm();
        if (!(slack > 0.0))
            return false;
        phi -= std::log(slack);
        for (const auto &b : blocks_) {
            double p = 0.0;
            if (!cone_barrier(b.kind, b.order, local_rows(b, x), p, nullptr, nullptr))
                return false;
            phi += p;
        }
        return std::isfinite(phi);
    }

    bool derivatives(const VectorXd &x, VectorXd &grad, MatrixXd &hess) const {
        grad.setZero(n_);
        hess.setZero(n_, n_);
        const VectorXd xb = x.head(ball_dim_) - center_;
        const double slack = r2_ - xb.squaredNorm();
        if (!(slack > 0.0))
            return false;
        grad.head(ball_dim_) += 2.0 * xb / slack;
        hess.topLeftCorner(ball_dim_, ball_dim_).diagonal().array() += 2.0 / slack;
        hess.topLeftCorner(ball_dim_, ball_dim_).noalias() += 4.0 * xb * xb.transpose() / (slack * slack);
        for (const auto &b : blocks_) {
            const VectorXd &y = local_rows(b, x);
            const int m = static_cast<int>(y.size());
            const auto nl = static_cast<int>(b.vars.size());
            if (b.kind == ConeKind::linear) {
                if (!(y(0) > 0.0))
                    return false;
                const double inv = 1.0 / y(0);
                for (int i = 0; i < nl; ++i) {
                    const double ai = b.A(0, i) * inv;
                    grad(b.vars[i]) -= ai;
                    for (int j = 0; j < nl; ++j)
                        hess(b.vars[i], b.vars[j]) += ai * b.A(0, j) * inv;
                }
                continue;
            }
            if (b.kind == ConeKind::soc) {
                const double t = y(0);
                const double un = y.tail(m - 1).norm();
                const double sl = (t - un) * (t + un);
                if (!(t > 0.0) || !(t > un) || !(sl > 0.0))
                    return false;
                // v = A' ds, ds = (2t, -2u)
                VectorXd &v = b.v;
                v.noalias() = -2.0 * b.A.bottomRows(m - 1).transpose() * y.tail(m - 1);
                v.noalias() += (2.0 * t) * b.A.row(0).transpose();
                const double c1 = 2.0 / sl;
                const double c2 = 1.0 / (sl * sl);
                for (int i = 0; i < nl; ++i) {
                    grad(b.vars[i]) -= v(i) / sl;
                    for (int j = 0; j < nl; ++j)
                        hess(b.vars[i], b.vars[j]) += c1 * b.AtJA(i, j) + c2 * v(i) * v(j);
                }
                continue;
            }
            VectorXd gy(m);
            MatrixXd Hy(m, m);
            double p = 0.0;
            if (!cone_barrier(b.kind, b.order, y, p, &gy, &Hy))
                return false;
            const VectorXd gl = b.A.transpose() * gy;
            const MatrixXd Hl = b.A.transpose() * Hy * b.A;
            for (int i = 0; i < nl; ++i) {
                grad(b.vars[i]) += gl(i);
                for (int j = 0; j < nl; ++j)
                    hess(b.vars[i], b.vars[j]) += Hl(i, j);
            }
        }
        return grad.allFinite() && hess.allFinite();
    }

  private:
    static const VectorXd &local_rows(const Block &b, const VectorXd &x) {
        b.y = b.b;
        for (std::size_t i = 0; i < b.vars.size(); ++i)
            b.y.noalias() += b.A.col(static_cast<int>(i)) * x(b.vars[i]);
        return b.y;
    }

    std::vector<Block> blocks_;
    int n_;
    int ball_dim_;
    VectorXd center_;
    double r2_;
    double degree_ = 0.0;
};

enum class PathOutcome { converged, early_stop, stalled, iteration_limit, numerical_failure };

struct PathState {
    int steps = 0;
    double t = 1.0;
};

template <class EarlyStop>
PathOutcome follow_path(const Barrier &f, const VectorXd &c, VectorXd &x, PathState &st, const SolverOptions &opt,
                        EarlyStop &&early_stop) {
    const int n = static_cast<int>(x.size());
    VectorXd grad(n), dx(n), scale(n);
    MatrixXd hess(n, n);
    bool last_stage = false;
    while (true) {
        // Centering at the current t.
        bool centered = false;
        double best_lambda2 = std::numeric_limits<double>::infinity();
        int since_best = 0;
        for (int inner = 0; inner < 1000; ++inner) {
            if (st.steps >= opt.max_newton_steps)
                return PathOutcome::iteration_limit;
            if (!f.derivatives(x, grad, hess))
                return PathOutcome::numerical_failure;
            grad += st.t * c;
            for (int i = 0; i < n; ++i) {
                const double d = hess(i, i);
                scale(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
            }
            const MatrixXd hs = scale.asDiagonal() * hess * scale.asDiagonal();
            const VectorXd rhs = scale.asDiagonal() * grad;
            Eigen::LLT<MatrixXd> llt(hs);
            if (llt.info() == Eigen::Success) {
                dx = -(scale.asDiagonal() * llt.solve(rhs));
            } else {
                Eigen::LDLT<MatrixXd> ldlt(hs);
                dx = -(scale.asDiagonal() * ldlt.solve(rhs));
                if (ldlt.info() != Eigen::Success)
                    return PathOutcome::numerical_failure;
            }
            if (!dx.allFinite())
                return PathOutcome::numerical_failure;
            const double lambda2 = -grad.dot(dx);
            if (lambda2 * 0.5 <= opt.newton_tolerance) {
                centered = true;
                break;
            }
            // Rounding-limited: the decrement stopped shrinking while already small.
            if (lambda2 < 0.5 * best_lambda2) {
                best_lambda2 = lambda2;
                since_best = 0;
            } else if (++since_best >= 8 && lambda2 < 1e-3) {
                centered = true;
                break;
            }
            double phi0 = 0.0;
            if (!f.value(x, phi0))
                return PathOutcome::numerical_failure;
            const double slope = grad.dot(dx);
            const double cdx = c.dot(dx);
            double step = 1.0;
            bool accepted = false;
            while (step > 1e-14) {
                const VectorXd xn = x + step * dx;
                double phi1 = 0.0;
                if (f.value(xn, phi1)) {
                    const double df = st.t * step * cdx + (phi1 - phi0);
                    if (df <= 0.25 * step * slope) {
                        x = xn;
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            ++st.steps;
            if (!accepted) {
                // Rounding floor reached; treat as centered when the decrement is already small.
                if (lambda2 < 1e-3) {
                    centered = true;
                    break;
                }
                return PathOutcome::stalled;
            }
            if (early_stop(x, false))
                return PathOutcome::early_stop;
        }
        if (!centered)
            return PathOutcome::stalled;
        if (early_stop(x, true))
            return PathOutcome::early_stop;
        if (last_stage)
            return PathOutcome::converged;
        const double gap = f.degree() / st.t;
        if (gap <= opt.gap_tolerance * std::max(1.0, std::abs(c.dot(x))))
            return PathOutcome::converged;
        st.t *= opt.barrier_growth;
        if (f.degree() / st.t <= opt.gap_tolerance * std::max(1.0, std::abs(c.dot(x))))
            last_stage = true;
    }
}

VectorXd starting_point(const Program &program) {
    const int n = program.num_variables();
    if (program.initial_point().empty())
        return VectorXd::Zero(n);
    return Eigen::Map<const VectorXd>(program.initial_point().data(), n);
}

// Smallest shift s making x strictly interior for every constraint (can be negative).
double required_shift(const Program &program, const VectorXd &x) {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    double s = -std::numeric_limits<double>::infinity();
    for (const auto &c : program.constraints()) {
        switch (c.kind) {
        case ConeKind::linear: s = std::max(s, -c.rows[0].evaluate(xs)); break;
        case ConeKind::soc: {
            double ss = 0.0;
            for (std::size_t r = 1; r < c.rows.size(); ++r) {
                const double u = c.rows[r].evaluate(xs);
                ss += u * u;
            }
            s = std::max(s, std::sqrt(ss) - c.rows[0].evaluate(xs));
            break;
        }
        case ConeKind::exp2: {
            const double z = c.rows[0].evaluate(xs);
            const double q = std::min(c.rows[1].evaluate(xs), 1000.0);
            s = std::max(s, std::exp2(q) - z);
            break;
        }
        case ConeKind::psd: {
            Eigen::MatrixXd m(c.order, c.order);
            std::size_t r = 0;
            for (int a = 0; a < c.order; ++a)
                for (int b = a; b < c.order; ++b)
                    m(a, b) = m(b, a) = c.rows[r++].evaluate(xs);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            s = std::max(s, -es.eigenvalues().minCoeff());
            break;
        }
        }
    }
    return s;
}

class BarrierBackend final : public Backend {
  public:
    BarrierBackend(std::string name, bool exp, bool psd, SolverOptions opt)
        : name_(std::move(name)), exp_(exp), psd_(psd), opt_(opt) {}

    std::string name() const override { return name_; }

    bool supports(ConeKind kind) const override {
        switch (kind) {
        case ConeKind::linear:
        case ConeKind::soc: return true;
        case ConeKind::exp2: return exp_;
        case ConeKind::psd: return psd_;
        }
        return false;
    }

    SolveResult solve(const Program &program) const override {
        for (ConeKind k : {ConeKind::exp2, ConeKind::psd})
            if (program.uses(k) && !supports(k))
                throw CapabilityError("backend '" + name_ + "' does not support " + to_string(k) + " constraints");

        const int n = program.num_variables();
        SolveResult res;
        VectorXd c = VectorXd::Zero(n);
        const double sign = program.sense() == Sense::maximize ? -1.0 : 1.0;
        for (const auto &[idx, coeff] : program.objective().terms())
            c(idx) += sign * coeff;

        VectorXd x = starting_point(program);
        const VectorXd x0 = x;
        const double scale0 = 1.0 + x0.lpNorm<Eigen::Infinity>();
        const double radius = opt_.ball_radius * scale0;
        PathState st;

        // Phase I, inside balls around the start of growing radius: the barrier alone
        // drifts along recession directions, so a small ball keeps the point near x0.
        double shift = 0.0;
        const double s0 = required_shift(program, x);
        if (std::isfinite(s0) && s0 >= -1e-9) {
            bool done = false;
            for (double rho = 10.0; !done; rho *= 1e3) {
                const bool last = rho * scale0 >= radius;
                const double r1 = last ? radius : rho * scale0;
                VectorXd xs(n + 1);
                xs.head(n) = x0;
                xs(n) = s0 + 1.0 + 0.1 * std::abs(s0);
                auto blocks = build_blocks(program, n, 0.0);
                Block floor; // s >= -1
                floor.kind = ConeKind::linear;
                floor.vars = {n};
                floor.A = MatrixXd::Ones(1, 1);
                floor.b = VectorXd::Ones(1);
                blocks.push_back(std::move(floor));
                const Barrier f1(std::move(blocks), n + 1, x0, r1);
                VectorXd c1 = VectorXd::Zero(n + 1);
                c1(n) = 1.0;
                PathState ph;
                ph.t = 1.0;
                bool infeasible = false;
                const double feas_tol = 1e-9;
                const auto outcome = follow_path(f1, c1, xs, ph, opt_, [&](const VectorXd &z, bool centered) {
                    if (z(n) < 0.0)
                        return true;
                    if (centered && z(n) - f1.degree() / ph.t > feas_tol) {
                        infeasible = true;
                        return true;
                    }
                    return false;
                });
                st.steps += ph.steps;
                if (infeasible) {
                    if (!last)
                        continue;
                    res.status = Status::infeasible;
                    res.solver_iterations = st.steps;
                    return res;
                }
                if (outcome != PathOutcome::early_stop) {
                    if (outcome == PathOutcome::iteration_limit) {
                        res.status = Status::iteration_limit;
                        res.solver_iterations = st.steps;
                        return res;
                    }
                    // Converged or stalled at s* ~ 0: the feasible set has (numerically) no interior.
                    if (xs(n) > 1e-7) {
                        if (!last)
                            continue;
                        res.status = outcome == PathOutcome::converged ? Status::infeasible : Status::numerical_failure;
                        res.solver_iterations = st.steps;
                        return res;
                    }
                    shift = std::max(xs(n), 0.0) * 1.0001 + 1e-13;
                }
                x = xs.head(n);
                done = true;
            }
        }

        if (c.isZero(0.0)) {
            res.status = Status::optimal;
            res.values.assign(x.data(), x.data() + n);
            res.objective_value = program.objective().evaluate(res.values);
            res.solver_iterations = st.steps;
            return res;
        }

        // Phase II.
        const Barrier f2(build_blocks(program, -1, shift), n, x0, radius);
        double phi = 0.0;
        if (!f2.value(x, phi)) {
            res.status = Status::numerical_failure;
            res.solver_iterations = st.steps;
            return res;
        }
        st.t = f2.degree() / (1.0 + std::min(std::abs(c.dot(x)), std::abs(c.dot(x0))));
        const auto outcome = follow_path(f2, c, x, st, opt_, [](const VectorXd &, bool) { return false; });
        res.solver_iterations = st.steps;
        const double gap = f2.degree() / st.t;
        const double scale = std::max(1.0, std::abs(c.dot(x)));
        switch (outcome) {
        case PathOutcome::converged: res.status = Status::optimal; break;
        case PathOutcome::iteration_limit: res.status = Status::iteration_limit; break;
        case PathOutcome::stalled:
            res.status = gap <= 1e-6 * scale ? Status::optimal : Status::numerical_failure;
            break;
        default: res.status = Status::numerical_failure; break;
        }
        if (res.status == Status::optimal && (x - x0).norm() > 0.5 * radius)
            res.status = Status::unbounded;
        if (res.status == Status::optimal) {
            res.values.assign(x.data(), x.data() + n);
            res.objective_value = program.objective().evaluate(res.values);
        }
        return res;
    }

  private:
    std::string name_;
    bool exp_;
    bool psd_;
    SolverOptions opt_;
};

} // namespace

std::unique_ptr<Backend> make_backend(const std::string &name, SolverOptions options) {
    if (name == "barrier")
        return std::make_unique<BarrierBackend>(name, true, true, options);
    if (name == "barrier-socp")
        return std::make_unique<BarrierBackend>(name, false, false, options);
    throw std::invalid_argument("unknown conic backend '" + name + "'");
}

} // namespace nomagee::conic
