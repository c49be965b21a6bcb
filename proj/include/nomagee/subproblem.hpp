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

#ifndef NOMAGEE_SUBPROBLEM_HPP
#define NOMAGEE_SUBPROBLEM_HPP

#include <complex>
#include <string>
#include <vector>

#include "nomagee/conic.hpp"
#include "nomagee/linearize.hpp"
#include "nomagee/noma.hpp"

// Constraint builders shared by the SCA, parametric, P-Min and SRM subproblems.
namespace nomagee {

// Lower clamp on the SINR slack used as an expansion point.
constexpr double kSinrSlackFloor = 1e-8;

struct BeamVariables {
    std::vector<conic::Variable> w; // one stacked [Re; Im] block of 2N per user
};

BeamVariables add_beam_variables(conic::Program &program, int num_users, int num_antennas);

// Stacked beams written into a full program point.
void write_beams(std::vector<double> &point, const BeamVariables &vars, const BeamformerSet &beams);
BeamformerSet read_beams(const conic::SolveResult &result, const BeamVariables &vars);

// Interference plus noise on user i's stream as seen at receiver k, over the beams.
// interference[i][k] = sum_{j<i} |h_k^H w_j|^2 + noise, k <= i.
std::vector<std::vector<double>> interference_levels(const ChannelSet &channels, const BeamformerSet &beams,
                                                     double noise_var);

// Unit phasors of h_k^H w_i (phases[i][k], k <= i) at an expansion point; 1 where the product vanishes.
// The signal constraints bound Re(conj(u) h_k^H w_i), which never exceeds |h_k^H w_i| and equals it at
// the expansion point.
using PhaseReference = std::vector<std::vector<std::complex<double>>>;
PhaseReference phase_reference(const ChannelSet &channels, const BeamformerSet &beams);

// sum_{j<i} |h_k^H w_j|^2 + noise <= bound.
void add_interference_bound(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars, int i,
                            int k, double noise_var, const conic::Expr &bound);

// Re(conj(phase) h_k^H w_i) >= tangent of sqrt(sinr * interference) at (sinr0, interference0).
void add_signal_tangent(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars, int i, int k,
                        const conic::Expr &sinr, const conic::Expr &interference, double sinr0,
                        double interference0, std::complex<double> phase);

// Re(conj(u_ik) h_k^H w_i) / sqrt(target_i) >= || (h_k^H w_j)_{j<i}, sigma ||, k <= i. Zero targets are skipped.
void add_min_rate(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars,
                  const std::vector<double> &targets, double noise_var, const PhaseReference &phases);

// Tangent of |h_i^H w_{j+1}|^2 at `expansion` >= |h_i^H w_j|^2 for all i and j < K-1.
void add_sic_chain(conic::Program &program, const ChannelSet &channels, const BeamVariables &vars,
                   const BeamformerSet &expansion);

// sum ||w_i||^2 <= p_ava.
void add_power_budget(conic::Program &program, const BeamVariables &vars, double p_ava);

// All beam reals as expressions (scaled).
std::vector<conic::Expr> beam_entries(const BeamVariables &vars, double scale = 1.0);
std::vector<conic::Expr> beam_entries(const conic::Variable &w, double scale = 1.0);

} // namespace nomagee

#endif
