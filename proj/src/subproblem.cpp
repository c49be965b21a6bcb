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

#include "nomagee/subproblem.hpp"
#include "nomagee/solution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace nomagee {

using conic::Expr;

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

BeamVariables add_beam_variables(conic::Program &program, int num_users, int num_antennas) {
    BeamVariables vars;
    for (int i = 0; i < num_users; ++i)
        vars.w.push_back(program.add_variable("w_" + std::to_string(i + 1), 2 * num_antennas));
    return vars;
}

void write_beams(std::vector<double> &point, const BeamVariables &vars, const BeamformerSet &beams) {
    for (std::size_t i = 0; i < vars.w.size(); ++i) {
        const Eigen::VectorXd x = stack(beams.w[i]);
        for (int r = 0; r < vars.w[i].dim; ++r)
            point[vars.w[i].offset + r] = x(r);
    }
}

BeamformerSet read_beams(const conic::SolveResult &result, const BeamVariables &vars) {
    BeamformerSet beams;
    for (const auto &v : vars.w) {
        const auto vals = result.value(v);
        beams.w.push_back(unstack(Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()))));
    }
    return beams;
}

std::vector<std::vector<double>> interference_levels(const ChannelSet &channels, const BeamformerSet &beams,
                                                     double noise_var) {
    check_dimensions(channels, beams);
    const int k_users = channels.num_users();
    std::vector<std::vector<double>> out(k_users);
    for (int i = 0; i < k_users; ++i)
        for (int k = 0; k <= i; ++k) {
            double s = noise_var;
            for (int j = 0; j < i; ++j)
                s += std::norm(channels.channels[k].dot(beams.w[j]));
            out[i].push_back(s);
        }
    return out;
}

PhaseReference phase_reference(const ChannelSet &channels, const BeamformerSet &beams) {
    check_dimensions(channels, beams);
    PhaseReference out(static_cast<std::size_t>(channels.num_users()));
    for (int i = 0; i < channels.num_users(); ++i)
        for (int k = 0; k <= i; ++k) {
            const std::complex<double> z = channels.channels[k].dot(beams.w[i]);
            const double mag = std::abs(z);
            out[i].push_back(mag > 1e-150 ? z / mag : std::complex<double>(1.0, 0.0));
        }
    return out;
}

namespace {

Expr projected_signal(const CVec &h, const conic::Variable &w, std::complex<double> phase) {
    auto [re, im] = inner_product_expr(h, w);
    return phase.real() * re + phase.imag() * im;
}

} // namespace

std::vector<Expr> beam_entries(const conic::Variable &w, double scale) {
    std::vector<Expr> out;
    for (int r = 0; r < w.dim; ++r)
        out.push_back(scale * w[r]);
    return out;
}

std::vector<Expr> beam_entries(const BeamVariables &vars, double scale) {
    std::vector<Expr> out;
    for (const auto &w : vars.w) {
        auto part = beam_entries(w, scale);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

void add_interference_bound(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars, int i,
                            int k, double noise_var, const Expr &bound) {
    const std::string label = "interference_" + std::to_string(k + 1) + "_" + std::to_string(i + 1);
    if (i == 0) {
        program.add_ge(bound, Expr(noise_var), label);
        return;
    }
    std::vector<Expr> u;
    for (int j = 0; j < i; ++j) {
        auto [re, im] = inner_product_expr(channels.channels[k], vars.w[j]);
        u.push_back(re);
        u.push_back(im);
    }
    program.add_rotated_soc(bound - noise_var, Expr(1.0), u, label);
}

void add_signal_tangent(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars, int i, int k,
                        const Expr &sinr, const Expr &interference, double sinr0, double interference0,
                        std::complex<double> phase) {
    const auto tangent = linearize_sqrt_product(std::max(sinr0, kSinrSlackFloor), interference0);
    const Expr re = projected_signal(channels.channels[k], vars.w[i], phase);
    program.add_ge(re, tangent.apply(sinr, interference),
                   "signal_" + std::to_string(k + 1) + "_" + std::to_string(i + 1));
}

void add_min_rate(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars,
                  const std::vector<double> &targets, double noise_var, const PhaseReference &phases) {
    for (int i = 0; i < static_cast<int>(vars.w.size()); ++i) {
        if (targets.at(i) <= 0.0)
            continue;
        const double scale = 1.0 / std::sqrt(targets[i]);
        for (int k = 0; k <= i; ++k) {
            std::vector<Expr> u;
            for (int j = 0; j < i; ++j) {
                auto [re, im] = inner_product_expr(channels.channels[k], vars.w[j]);
                u.push_back(re);
                u.push_back(im);
            }
            u.emplace_back(std::sqrt(noise_var));
            const Expr signal = projected_signal(channels.channels[k], vars.w[i], phases.at(i).at(k));
            program.add_soc(scale * signal, u, "min_rate_" + std::to_string(k + 1) + "_" + std::to_string(i + 1));
        }
    }
}

void add_sic_chain(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars,
                   const BeamformerSet &expansion) {
    const int k_users = static_cast<int>(vars.w.size());
    for (int i = 0; i < k_users; ++i)
        for (int j = 0; j + 1 < k_users; ++j) {
            const auto lin = linearize_abs_sq(channels.channels[i], expansion.w[j + 1]);
            auto [re, im] = inner_product_expr(channels.channels[i], vars.w[j]);
            program.add_rotated_soc(lin.apply(vars.w[j + 1]), Expr(1.0), {re, im},
                                    "sic_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
        }
}

void add_power_budget(conic::Program &program, const BeamVariables &vars, double p_ava) {
    program.add_soc(Expr(std::sqrt(p_ava)), beam_entries(vars), "budget");
}

} // namespace nomagee
