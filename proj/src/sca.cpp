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

#include "nomagee/sca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nomagee/baselines.hpp"

namespace nomagee {

using conic::Expr;

namespace {

constexpr double kAlphaFloor = 1e-12;

} // namespace

int ScaState::num_scalar_variables() const {
    const int k = num_users();
    const int n = k > 0 ? static_cast<int>(beams.w.front().size()) : 0;
    return 2 * k * n + 3 + k * (k + 1) / 2 + 2 * k;
}

ScaState state_from_beams(const ChannelSet &channels, const BeamformerSet &beams, const SystemConfig &config) {
    ScaState s;
    s.beams = beams;
    s.theta = interference_levels(channels, s.beams, config.noise_var);
    double rate = 0.0;
    for (double g : effective_sinrs(channels, beams, config.noise_var)) {
        s.zeta.push_back(1.0 + g);
        s.delta.push_back(std::log2(1.0 + g));
        rate += s.delta.back();
    }
    s.beta_beta = total_power(beams, config.power_model()).p_total;
    s.beta = s.beta_beta * s.beta_beta;
    s.alpha = std::pow(rate / s.beta_beta, 2);
    return s;
}

ScaState initialize_state(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options) {
    const auto verdict = feasibility_gate(channels, config, options, false);
    if (!verdict.decided)
        throw std::runtime_error("minimum-power initialisation failed numerically");
    if (!verdict.feasible)
        throw InfeasibleInstance("minimum-rate targets need more than the available power");
    return state_from_beams(channels, verdict.pmin.beams, config);
}

std::vector<double> ScaProgram::point(const ScaState &state) const {
    std::vector<double> x(program.num_variables(), 0.0);
    write_beams(x, beams, state.beams);
    x[alpha.offset] = state.alpha;
    x[beta.offset] = state.beta;
    x[beta_beta.offset] = state.beta_beta;
    for (int i = 0; i < state.num_users(); ++i) {
        x[zeta.offset + i] = state.zeta[i];
        x[delta.offset + i] = state.delta[i];
        for (int k = 0; k <= i; ++k)
            x[theta.offset + theta_index(i, k)] = state.theta[i][k];
    }
    return x;
}

ScaProgram build_subproblem(const ScaState &state, const ChannelSet &channels, const SystemConfig &config) {
    const int k_users = channels.num_users();
    const int n_ant = channels.num_antennas();
    check_dimensions(channels, state.beams);
    const PowerModel pm = config.power_model();
    const PhaseReference phases = phase_reference(channels, state.beams);

    ScaProgram sp;
    auto &prog = sp.program;
    sp.beams = add_beam_variables(prog, k_users, n_ant);
    sp.alpha = prog.add_variable("alpha");
    sp.beta = prog.add_variable("beta");
    sp.beta_beta = prog.add_variable("beta_beta");
    sp.theta = prog.add_variable("theta", k_users * (k_users + 1) / 2);
    sp.zeta = prog.add_variable("zeta", k_users);
    sp.delta = prog.add_variable("delta", k_users);

    prog.maximize(sp.alpha.scalar());

    Expr rate_sum;
    for (int i = 0; i < k_users; ++i)
        rate_sum += sp.delta[i];
    const auto epi = linearize_sqrt_product(std::max(state.alpha, kAlphaFloor), state.beta);
    prog.add_ge(rate_sum, epi.apply(sp.alpha.scalar(), sp.beta.scalar()), "epigraph");

    for (int i = 0; i < k_users; ++i) {
        prog.add_exp_bound(sp.zeta[i], sp.delta[i], "rate_" + std::to_string(i + 1));
        for (int k = 0; k <= i; ++k) {
            const Expr theta = sp.theta[ScaProgram::theta_index(i, k)];
            add_signal_tangent(prog, channels, sp.beams, i, k, sp.zeta[i] - 1.0, theta, state.zeta[i] - 1.0,
                               state.theta[i][k], phases[i][k]);
            add_interference_bound(prog, channels, sp.beams, i, k, config.noise_var, theta);
        }
    }

    prog.add_rotated_soc(sp.beta.scalar(), Expr(1.0), {sp.beta_beta.scalar()}, "beta");
    prog.add_rotated_soc(sp.beta_beta.scalar() - pm.p_loss(), Expr(1.0),
                         beam_entries(sp.beams, 1.0 / std::sqrt(pm.amp_efficiency)), "total_power");

    add_min_rate(prog, channels, sp.beams, config.min_sinr, config.noise_var, phases);
    add_sic_chain(prog, channels, sp.beams, state.beams);
    add_power_budget(prog, sp.beams, config.p_ava);

    prog.set_initial_point(sp.point(state));
    return sp;
}

Solution run_sca_from(const ChannelSet &channels, const SystemConfig &config, const BeamformerSet &start,
                      const AlgorithmOptions &options) {
    const auto &backend = options.resolved_backend();
    const double tol = options.tolerance > 0.0 ? options.tolerance : config.sca_tolerance;
    const int cap = options.max_iterations > 0 ? options.max_iterations : config.max_iterations;
    const PowerModel pm = config.power_model();

    Solution sol;
    sol.status = SolveStatus::iteration_limit;
    ScaState state = state_from_beams(channels, start, config);
    if (options.keep_iterates)
        sol.iterates.push_back(start);

    for (int n = 1; n <= cap; ++n) {
        const ScaProgram sp = build_subproblem(state, channels, config);
        const auto res = conic::solve(sp.program, backend);
        if (!res.optimal()) {
            sol.status = SolveStatus::numerical_failure;
            break;
        }
        const double alpha = res.value(sp.alpha.scalar());
        const BeamformerSet beams = read_beams(res, sp.beams);
        const auto split = total_power(beams, pm);
        const auto r = rates(effective_sinrs(channels, beams, config.noise_var), 1.0);
        sol.sca_trace.push_back({n, alpha, std::sqrt(std::max(alpha, 0.0)), split.p_tr,
                                 std::accumulate(r.begin(), r.end(), 0.0)});
        sol.objective_trace.push_back(alpha);
        if (options.keep_iterates)
            sol.iterates.push_back(beams);
        sol.iterations_used = n;

        state = state_from_beams(channels, beams, config);
        state.iteration = n;

        if (n >= 2) {
            const double prev = sol.objective_trace[n - 2];
            if (std::abs(alpha - prev) <= tol * std::abs(prev)) {
                sol.status = SolveStatus::converged;
                break;
            }
        }
    }
    sol.beams = state.beams;
    sol.report = validate_solution(channels, sol.beams, config);
    return sol;
}

Solution run_sca(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options) {
    auto verdict = feasibility_gate(channels, config, options, true);
    if (!verdict.decided) {
        Solution sol = verdict.pmin;
        sol.status = SolveStatus::numerical_failure;
        return sol;
    }
    if (!verdict.feasible) {
        Solution sol = std::move(*verdict.fallback);
        sol.status = SolveStatus::infeasible;
        return sol;
    }
    return run_sca_from(channels, config, verdict.pmin.beams, options);
}

} // namespace nomagee
