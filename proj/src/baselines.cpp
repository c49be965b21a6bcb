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

#include "nomagee/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nomagee/dinkelbach.hpp"
#include "nomagee/subproblem.hpp"

namespace nomagee {

using conic::Expr;

namespace {

constexpr double kPminTolerance = 1e-7;
constexpr int kPminCap = 100;
constexpr double kTargetMargin = 1e-6;

SystemConfig with_targets(const SystemConfig &config, const std::vector<double> &targets) {
    SystemConfig c = config;
    c.min_sinr = targets;
    return c;
}

} // namespace

BeamformerSet common_direction_beams(const ChannelSet &channels, const std::vector<double> &targets,
                                     double noise_var, const conic::Backend &backend) {
    const int k_users = channels.num_users();
    const int n_ant = channels.num_antennas();
    if (static_cast<int>(targets.size()) != k_users)
        throw std::invalid_argument("common_direction_beams: one target per user expected");

    conic::Program prog;
    const auto u = prog.add_variable("u", 2 * n_ant);
    const auto tau = prog.add_variable("tau");
    prog.maximize(tau.scalar());
    for (int k = 0; k < k_users; ++k) {
        prog.add_ge(inner_product_expr(channels.channels[k], u).first, tau.scalar(), "gain_" + std::to_string(k + 1));
    }
    prog.add_soc(Expr(1.0), beam_entries(u), "unit");
    const auto res = conic::solve(prog, backend);
    if (!res.optimal() || res.value(tau.scalar()) <= 1e-12)
        throw InfeasibleInstance("no common direction reaches every user");

    const auto uv = res.value(u);
    const CVec dir = unstack(Eigen::Map<const Eigen::VectorXd>(uv.data(), static_cast<Eigen::Index>(uv.size())));

    BeamformerSet beams = BeamformerSet::zeros(k_users, n_ant);
    double below = 0.0; // sum of c_j^2 over stronger users
    double c_prev = 0.0;
    double g_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k_users; ++i) {
        const double re = channels.channels[i].dot(dir).real();
        g_min = std::min(g_min, re * re);
        const double need = std::max(targets[i], 0.0) * (below + noise_var / g_min) * (1.0 + kTargetMargin);
        const double c2 = std::max(c_prev, need);
        beams.w[i] = std::sqrt(c2) * dir;
        below += c2;
        c_prev = c2;
    }
    return beams;
}

Solution solve_pmin(const ChannelSet &channels, const std::vector<double> &targets, const SystemConfig &config,
                    const AlgorithmOptions &options, const BeamformerSet *warm_start) {
    const int k_users = channels.num_users();
    const int n_ant = channels.num_antennas();
    if (static_cast<int>(targets.size()) != k_users)
        throw std::invalid_argument("solve_pmin: one target per user expected");
    if (std::any_of(targets.begin(), targets.end(), [](double g) { return g < 0.0; }))
        throw std::invalid_argument("solve_pmin: negative SINR target");
    const auto &backend = options.resolved_backend();
    const double tol = options.tolerance > 0.0 ? options.tolerance : kPminTolerance;
    const int cap = options.max_iterations > 0 ? options.max_iterations : kPminCap;
    const SystemConfig cfg = with_targets(config, targets);

    Solution sol;
    if (std::all_of(targets.begin(), targets.end(), [](double g) { return g == 0.0; })) {
        sol.beams = BeamformerSet::zeros(k_users, n_ant);
        sol.status = SolveStatus::converged;
        sol.objective_trace.push_back(0.0);
        sol.report = validate_solution(channels, sol.beams, cfg);
        return sol;
    }

    BeamformerSet current = warm_start ? *warm_start : common_direction_beams(channels, targets, cfg.noise_var, backend);
    check_dimensions(channels, current);
    if (options.keep_iterates)
        sol.iterates.push_back(current);
    sol.status = SolveStatus::iteration_limit;

    for (int n = 1; n <= cap; ++n) {
        conic::Program prog;
        const auto vars = add_beam_variables(prog, k_users, n_ant);
        const auto p = prog.add_variable("p");
        prog.minimize(p.scalar());
        prog.add_rotated_soc(p.scalar(), Expr(1.0), beam_entries(vars), "power");
        add_min_rate(prog, channels, vars, targets, cfg.noise_var, phase_reference(channels, current));
        add_sic_chain(prog, channels, vars, current);

        std::vector<double> x0(prog.num_variables(), 0.0);
        write_beams(x0, vars, current);
        x0[p.offset] = total_power(current, cfg.power_model()).p_tr;
        prog.set_initial_point(std::move(x0));

        const auto res = conic::solve(prog, backend);
        if (!res.optimal()) {
            sol.status = SolveStatus::numerical_failure;
            break;
        }
        current = read_beams(res, vars);
        const double power = total_power(current, cfg.power_model()).p_tr;
        sol.objective_trace.push_back(power);
        if (options.keep_iterates)
            sol.iterates.push_back(current);
        sol.iterations_used = n;
        if (n >= 2) {
            const double prev = sol.objective_trace[n - 2];
            if (std::abs(power - prev) <= tol * std::max(prev, 1e-300)) {
                sol.status = SolveStatus::converged;
                break;
            }
        }
    }
    sol.beams = current;
    sol.report = validate_solution(channels, sol.beams, cfg);
    return sol;
}

double SdpSolution::total_power() const { return std::accumulate(powers.begin(), powers.end(), 0.0); }

SdpSolution solve_pmin_sdp(const ChannelSet &channels, const std::vector<double> &targets, double noise_var,
                           const conic::Backend *backend) {
    const int k_users = channels.num_users();
    const int n_ant = channels.num_antennas();
    if (static_cast<int>(targets.size()) != k_users)
        throw std::invalid_argument("solve_pmin_sdp: one target per user expected");
    const auto &be = backend ? *backend : conic::default_backend();
    if (!be.supports(conic::ConeKind::psd))
        throw conic::CapabilityError("backend '" + be.name() + "' has no PSD support");

    // W = X + jY, X symmetric, Y antisymmetric. Parameter order: X(a,b) a<=b, then Y(a,b) a<b.
    std::vector<Eigen::MatrixXcd> basis;
    for (int a = 0; a < n_ant; ++a)
        for (int b = a; b < n_ant; ++b) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n_ant, n_ant);
            e(a, b) = e(b, a) = 1.0;
            basis.push_back(e);
        }
    for (int a = 0; a < n_ant; ++a)
        for (int b = a + 1; b < n_ant; ++b) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n_ant, n_ant);
            e(a, b) = {0.0, 1.0};
            e(b, a) = {0.0, -1.0};
            basis.push_back(e);
        }
    const int dim = static_cast<int>(basis.size()); // n^2

    // trace_coeff[k][e] = h_k^H E_e h_k
    std::vector<std::vector<double>> trace_coeff(k_users, std::vector<double>(dim));
    for (int k = 0; k < k_users; ++k)
        for (int e = 0; e < dim; ++e)
            trace_coeff[k][e] = channels.channels[k].dot(basis[e] * channels.channels[k]).real();

    conic::Program prog;
    std::vector<conic::Variable> w;
    for (int i = 0; i < k_users; ++i)
        w.push_back(prog.add_variable("W_" + std::to_string(i + 1), dim));

    auto trace_h = [&](int k, int i) {
        Expr t;
        for (int e = 0; e < dim; ++e)
            t += trace_coeff[k][e] * w[i][e];
        return t;
    };

    Expr objective;
    for (int i = 0; i < k_users; ++i) {
        int e = 0;
        for (int a = 0; a < n_ant; ++a)
            for (int b = a; b < n_ant; ++b, ++e)
                if (a == b)
                    objective += w[i][e];
    }
    prog.minimize(objective);

    for (int i = 0; i < k_users; ++i) {
        // [[X, -Y], [Y, X]] >= 0
        std::vector<std::vector<Expr>> m(2 * n_ant, std::vector<Expr>(2 * n_ant));
        int e = 0;
        for (int a = 0; a < n_ant; ++a)
            for (int b = a; b < n_ant; ++b, ++e) {
                m[a][b] = m[b][a] = m[n_ant + a][n_ant + b] = m[n_ant + b][n_ant + a] = w[i][e];
            }
        for (int a = 0; a < n_ant; ++a)
            for (int b = a + 1; b < n_ant; ++b, ++e) {
                m[n_ant + a][b] = m[b][n_ant + a] = w[i][e];
                m[n_ant + b][a] = m[a][n_ant + b] = -w[i][e];
            }
        prog.add_psd(m, "psd_" + std::to_string(i + 1));
    }

    for (int i = 0; i < k_users; ++i) {
        if (targets[i] <= 0.0)
            continue;
        for (int k = 0; k <= i; ++k) {
            Expr lhs = trace_h(k, i);
            for (int j = 0; j < i; ++j)
                lhs -= targets[i] * trace_h(k, j);
            prog.add_ge(lhs, Expr(targets[i] * noise_var),
                        "sinr_" + std::to_string(k + 1) + "_" + std::to_string(i + 1));
        }
    }
    for (int i = 0; i < k_users; ++i)
        for (int j = 0; j + 1 < k_users; ++j)
            prog.add_le(trace_h(i, j), trace_h(i, j + 1), "sic_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));

    SdpSolution out;
    const auto res = conic::solve(prog, be);
    out.status = res.status;
    if (!res.optimal())
        return out;

    out.rank_one = true;
    for (int i = 0; i < k_users; ++i) {
        const auto vals = res.value(w[i]);
        Eigen::MatrixXcd wm = Eigen::MatrixXcd::Zero(n_ant, n_ant);
        for (int e = 0; e < dim; ++e)
            wm += vals[e] * basis[e];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(wm);
        const auto &lambda = eig.eigenvalues();
        const double l1 = std::max(lambda(n_ant - 1), 0.0);
        const double l2 = n_ant > 1 ? std::max(lambda(n_ant - 2), 0.0) : 0.0;
        const double ratio = l1 > 0.0 ? l2 / l1 : 0.0;
        CVec v = eig.eigenvectors().col(n_ant - 1);
        const std::complex<double> phase = channels.channels[i].dot(v);
        if (std::abs(phase) > 0.0)
            v *= std::conj(phase) / std::abs(phase);
        out.matrices.push_back(wm);
        out.powers.push_back(wm.trace().real());
        out.rank_ratios.push_back(ratio);
        out.beams.w.push_back(std::sqrt(l1) * v);
        out.rank_one = out.rank_one && ratio < kRankOneThreshold;
    }
    return out;
}

namespace {

BeamformerSet full_power_common_start(const ChannelSet &channels, const SystemConfig &config,
                                      const conic::Backend &backend) {
    BeamformerSet start =
        common_direction_beams(channels, std::vector<double>(channels.num_users(), 1.0), config.noise_var, backend);
    const double p = total_power(start, config.power_model()).p_tr;
    for (auto &w : start.w)
        w *= std::sqrt(config.p_ava / p);
    return start;
}

Solution srm_from(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options,
                  BeamformerSet start) {
    SystemConfig cfg = config;
    std::fill(cfg.min_sinr.begin(), cfg.min_sinr.end(), 0.0);
    InnerOptions inner;
    inner.with_min_rate = false;
    inner.tolerance = options.tolerance > 0.0 ? options.tolerance : config.sca_tolerance;
    inner.max_iterations = options.max_iterations > 0 ? options.max_iterations : config.max_iterations;
    inner.keep_iterates = options.keep_iterates;
    const auto run = solve_inner(channels, cfg, 0.0, start, inner, options.resolved_backend());

    Solution sol;
    sol.beams = run.beams;
    sol.objective_trace = run.objective_trace;
    sol.iterations_used = run.iterations;
    sol.iterates = run.iterates;
    sol.dinkelbach_trace = run.trace;
    sol.status = run.failed ? SolveStatus::numerical_failure
                            : (run.converged ? SolveStatus::converged : SolveStatus::iteration_limit);
    sol.report = validate_solution(channels, sol.beams, config);
    return sol;
}

} // namespace

Solution solve_srm(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options,
                   const BeamformerSet *pmin_beams) {
    BeamformerSet start;
    if (pmin_beams) {
        start = *pmin_beams;
    } else if (pmin_lower_bound(channels, config.min_sinr, config.noise_var) <= config.p_ava) {
        AlgorithmOptions pmin_options;
        pmin_options.backend = options.backend;
        const auto pmin = solve_pmin(channels, config.min_sinr, config, pmin_options);
        if (pmin.usable())
            start = pmin.beams;
    }
    const double p = start.w.empty() ? 0.0 : total_power(start, config.power_model()).p_tr;
    if (!(p > 0.0))
        return srm_from(channels, config, options, full_power_common_start(channels, config, options.resolved_backend()));
    if (p > config.p_ava)
        for (auto &w : start.w)
            w *= std::sqrt(config.p_ava / p);
    return srm_from(channels, config, options, std::move(start));
}

std::vector<double> water_filling(const std::vector<double> &gains, double noise_var, double budget) {
    if (budget < 0.0 || noise_var <= 0.0)
        throw std::invalid_argument("water_filling: budget must be >= 0 and noise > 0");
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

    std::vector<double> p(gains.size(), 0.0);
    double floor_sum = 0.0;
    std::size_t active = 0;
    double level = 0.0;
    for (std::size_t m = 0; m < order.size(); ++m) {
        const double g = gains[order[m]];
        if (g <= 0.0)
            break;
        const double candidate = (budget + floor_sum + noise_var / g) / static_cast<double>(m + 1);
        if (candidate <= noise_var / g)
            break;
        floor_sum += noise_var / g;
        level = candidate;
        active = m + 1;
    }
    for (std::size_t m = 0; m < active; ++m)
        p[order[m]] = std::max(0.0, level - noise_var / gains[order[m]]);
    return p;
}

Solution solve_zf_oma(const ChannelSet &channels, const SystemConfig &config, bool equal_power) {
    const int k_users = channels.num_users();
    const int n_ant = channels.num_antennas();
    if (k_users > n_ant)
        throw std::invalid_argument("solve_zf_oma: zero-forcing needs K <= N");

    Eigen::MatrixXcd h(k_users, n_ant); // rows h_k^H
    for (int k = 0; k < k_users; ++k)
        h.row(k) = channels.channels[k].adjoint();
    const Eigen::MatrixXcd gram = h * h.adjoint();
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    if (ldlt.info() != Eigen::Success || Eigen::FullPivLU<Eigen::MatrixXcd>(gram).rank() < k_users)
        throw std::invalid_argument("solve_zf_oma: channels are linearly dependent");
    const Eigen::MatrixXcd dirs = h.adjoint() * ldlt.solve(Eigen::MatrixXcd::Identity(k_users, k_users));

    std::vector<double> gains(k_users);
    std::vector<CVec> unit(k_users);
    for (int k = 0; k < k_users; ++k) {
        const double norm = dirs.col(k).norm();
        unit[k] = dirs.col(k) / norm;
        gains[k] = 1.0 / (norm * norm);
    }
    const auto p = equal_power ? std::vector<double>(k_users, config.p_ava / k_users)
                               : water_filling(gains, config.noise_var, config.p_ava);

    Solution sol;
    sol.decoding = Decoding::single_user;
    for (int k = 0; k < k_users; ++k)
        sol.beams.w.push_back(std::sqrt(p[k]) * unit[k]);
    sol.status = SolveStatus::converged;
    sol.iterations_used = 1;
    sol.report = validate_solution(channels, sol.beams, config, Decoding::single_user);
    sol.objective_trace.push_back(sol.report.sum_rate);
    return sol;
}

double pmin_lower_bound(const ChannelSet &channels, const std::vector<double> &targets, double noise_var) {
    if (targets.size() != channels.gains.size())
        throw std::invalid_argument("pmin_lower_bound: one target per user");
    double lb = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        lb += targets[i] * noise_var / channels.gains[i];
    return lb;
}

FeasibilityVerdict feasibility_gate(const ChannelSet &channels, const SystemConfig &config,
                                    const AlgorithmOptions &options, bool with_fallback) {
    FeasibilityVerdict v;
    const double bound = pmin_lower_bound(channels, config.min_sinr, config.noise_var);
    if (bound > config.p_ava) {
        v.decided = true;
        v.p_star = bound;
        v.pmin.status = SolveStatus::infeasible;
        if (with_fallback)
            v.fallback =
                srm_from(channels, config, options, full_power_common_start(channels, config, options.resolved_backend()));
        return v;
    }
    AlgorithmOptions pmin_options;
    pmin_options.backend = options.backend;
    v.pmin = solve_pmin(channels, config.min_sinr, config, pmin_options);
    v.p_star = v.pmin.report.p_tr;
    v.decided = v.pmin.usable();
    v.feasible = v.decided && v.p_star <= config.p_ava;
    if (v.decided && !v.feasible && with_fallback)
        v.fallback = solve_srm(channels, config, options, &v.pmin.beams);
    return v;
}

} // namespace nomagee
