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

#ifndef NOMAGEE_SCA_HPP
#define NOMAGEE_SCA_HPP

#include <vector>

#include "nomagee/conic.hpp"
#include "nomagee/scenario.hpp"
#include "nomagee/solution.hpp"
#include "nomagee/subproblem.hpp"

// Energy-efficiency maximisation by successive convex approximation of the
// epigraph form: maximise alpha with sqrt(alpha) <= sum_i R_i / P_total.
namespace nomagee {

struct ScaState {
    int iteration = 0;
    BeamformerSet beams;
    double alpha = 0.0;
    double beta = 0.0;      // >= beta_beta^2
    double beta_beta = 0.0; // >= P_total
    std::vector<std::vector<double>> theta; // theta[i][k], k <= i: interference plus noise
    std::vector<double> zeta;               // 1 + SINR
    std::vector<double> delta;              // rate slack, zeta >= 2^delta

    int num_users() const { return beams.num_users(); }
    // 2KN + 3 + K(K+1)/2 + 2K
    int num_scalar_variables() const;
};

// Slacks filled in tightly from the beams, with the signal term taken as Re(h_k^H w_i).
ScaState state_from_beams(const ChannelSet &channels, const BeamformerSet &beams, const SystemConfig &config);

// P-Min start. Throws InfeasibleInstance when the minimum-rate targets need more than the budget,
// std::runtime_error when P-Min fails numerically.
ScaState initialize_state(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options = {});

struct ScaProgram {
    conic::Program program;
    BeamVariables beams;
    conic::Variable alpha, beta, beta_beta, theta, zeta, delta;

    static int theta_index(int i, int k) { return i * (i + 1) / 2 + k; }
    // The state's own values as a program point.
    std::vector<double> point(const ScaState &state) const;
};

ScaProgram build_subproblem(const ScaState &state, const ChannelSet &channels, const SystemConfig &config);

// Runs the feasibility gate first; an infeasible instance returns the sum-rate fallback with status infeasible.
Solution run_sca(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options = {});
// Iterates from the given feasible beams, skipping the gate.
Solution run_sca_from(const ChannelSet &channels, const SystemConfig &config, const BeamformerSet &start,
                      const AlgorithmOptions &options = {});

} // namespace nomagee

#endif
