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

#include "nomagee/dinkelbach.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nomagee/baselines.hpp"

namespace nomagee {

using conic::Expr;

DinkelbachState dinkelbach_state_from_beams(const ChannelSet &channels, const BeamformerSet &beams,
                                            const SystemConfig &config) {
    DinkelbachState s;
    s.beams = beams;
    s.rho = interference_levels(channels, s.beams, config.noise_var);
    for (double g : effective_sinrs(channels, beams, config.noise_var)) {
        s.z.push_back(1.0 + g);
        s.q.push_back(std::log2(1.0 + g));
        s.nu += s.q.back();
    }
    for (const auto &w : beams.w)
        s.p.push_back(w.squaredNorm());
    return s;
}

double chi_update(const BeamformerSet &beams, const ChannelSet &channels, const PowerModel &power_model,
                  double noise_var, double bandwidth) {
    return gee(channels, beams, power_model, noise_var, bandwidth);
}

std::vector<double> InnerProgram::point(const DinkelbachState &state) const {
    std::vector<double> x(program.num_variables(), 0.0);
    write_beams(x, beams, state.beams);
    x[nu.offset] = state.nu;
    for (int i = 0; i < state.num_users(); ++i) {
        x[z.offset + i] = state.z[i];
        x[q.offset + i] = state.q[i];
        x[p.offset + i] = state.p[i];
        for (int k = 0; k <= i; ++k)
            x[rho.offset + rho_index(i, k)] = state.rho[i][k];
    }
    return x;
}

InnerProgram build_inner_subproblem(const DinkelbachState &state, double chi, const ChannelSet &channels,
                                    const SystemConfig &config, bool with_min_rate) {
    const int k_users = channels.num_users();
    check_dimensions(channels, state.beams);
    const PowerModel pm = config.power_model();
    const PhaseReference phases = phase_reference(channels, state.beams);

    InnerProgram ip;
    auto &prog = ip.program;
    ip.beams = add_beam_variables(prog, k_users, channels.num_antennas());
    ip.nu = prog.add_variable("nu");
    ip.z = prog.add_variable("z", k_users);
    ip.q = prog.add_variable("q", k_users);
    ip.rho = prog.add_variable("rho", k_users * (k_users + 1) / 2);
    ip.p = prog.add_variable("p", k_users);

    Expr power;
    for (int i = 0; i < k_users; ++i)
        power += ip.p[i];
    prog.maximize(ip.nu.scalar() - chi * (power / pm.amp_efficiency + pm.p_loss()));

    Expr rate_sum;
    for (int i = 0; i < k_users; ++i)
        rate_sum += ip.q[i];
    prog.add_ge(rate_sum, ip.nu.scalar(), "sum_rate");

    for (int i = 0; i < k_users; ++i) {
        prog.add_exp_bound(ip.z[i], ip.q[i], "rate_" + std::to_string(i + 1));
        for (int k = 0; k <= i; ++k) {
            const Expr rho = ip.rho[InnerProgram::rho_index(i, k)];
            add_signal_tangent(prog, channels, ip.beams, i, k, ip.z[i] - 1.0, rho, state.z[i] - 1.0, state.rho[i][k],
                               phases[i][k]);
            add_interference_bound(prog, channels, ip.beams, i, k, config.noise_var, rho);
        }
        prog.add_rotated_soc(ip.p[i], Expr(1.0), beam_entries(ip.beams.w[i]), "power_" + std::to_string(i + 1));
    }
    prog.add_le(power, Expr(config.p_ava), "budget");

    if (with_min_rate)
        add_min_rate(prog, channels, ip.beams, config.min_sinr, config.noise_var, phases);
    add_sic_chain(prog, channels, ip.beams, state.beams);

    prog.set_initial_point(ip.point(state));
    return ip;
}

InnerRun solve_inner(const ChannelSet &channels, const SystemConfig &config, double chi, const BeamformerSet &start,
                     const InnerOptions &options, const conic::Backend &backend) {
    const PowerModel pm = config.power_model();
    InnerRun run;
    run.beams = start;
    DinkelbachState state = dinkelbach_state_from_beams(channels, start, config);
    for (int n = 1; n <= options.max_iterations; ++n) {
        const InnerProgram ip = build_inner_subproblem(state, chi, channels, config, options.with_min_rate);
        const auto res = conic::solve(ip.program, backend);
        if (!res.optimal()) {
            run.failed = true;
            break;
        }
        const double objective = res.objective_value;
        const double nu = res.value(ip.nu.scalar());
        run.beams = read_beams(res, ip.beams);
        state = dinkelbach_state_from_beams(channels, run.beams, config);

        const auto r = rates(effective_sinrs(channels, run.beams, config.noise_var), 1.0);
        const double f1 = std::accumulate(r.begin(), r.end(), 0.0);
        const auto split = total_power(run.beams, pm);
        run.trace.push_back({options.outer_index, n, chi, nu, split.p_tr, f1 - chi * split.p_total});
        run.objective_trace.push_back(objective);
        if (options.keep_iterates)
            run.iterates.push_back(run.beams);
        run.iterations = n;

        if (n >= 2) {
            const double prev = run.objective_trace[n - 2];
            if (std::abs(objective - prev) <= options.tolerance * std::max(std::abs(nu), 1e-12)) {
                run.converged = true;
                break;
            }
        }
    }
    return run;
}

Solution run_dinkelbach_from(const ChannelSet &channels, const SystemConfig &config, const BeamformerSet &start,
                             const AlgorithmOptions &options) {
    const auto &backend = options.resolved_backend();
    const PowerModel pm = config.power_model();
    const double outer_tol = options.tolerance > 0.0 ? options.tolerance : config.dinkelbach_tolerance;
    const int outer_cap = options.max_iterations > 0 ? options.max_iterations : kDinkelbachOuterCap;

    InnerOptions inner;
    inner.tolerance = options.tolerance > 0.0 ? options.tolerance : config.sca_tolerance;
    inner.max_iterations = kDinkelbachInnerCap;
    inner.keep_iterates = options.keep_iterates;

    Solution sol;
    sol.status = SolveStatus::iteration_limit;
    sol.beams = start;
    if (options.keep_iterates)
        sol.iterates.push_back(start);
    double chi = 0.0;
    for (int m = 0; m < outer_cap; ++m) {
        inner.outer_index = m;
        auto run = solve_inner(channels, config, chi, sol.beams, inner, backend);
        sol.dinkelbach_trace.insert(sol.dinkelbach_trace.end(), run.trace.begin(), run.trace.end());
        sol.iterates.insert(sol.iterates.end(), run.iterates.begin(), run.iterates.end());
        if (run.failed && run.iterations == 0) {
            sol.status = SolveStatus::numerical_failure;
            break;
        }
        sol.beams = run.beams;
        const double next = chi_update(sol.beams, channels, pm, config.noise_var);
        sol.objective_trace.push_back(next);
        sol.iterations_used = m + 1;
        const bool settled = std::abs(next - chi) <= outer_tol * std::min(1.0, next);
        chi = next;
        if (run.failed) {
            sol.status = SolveStatus::numerical_failure;
            break;
        }
        if (settled) {
            sol.status = SolveStatus::converged;
            break;
        }
    }
    sol.report = validate_solution(channels, sol.beams, config);
    return sol;
}

Solution run_dinkelbach(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options) {
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
    return run_dinkelbach_from(channels, config, verdict.pmin.beams, options);
}

} // namespace nomagee
