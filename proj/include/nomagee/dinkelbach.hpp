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

#ifndef NOMAGEE_DINKELBACH_HPP
#define NOMAGEE_DINKELBACH_HPP

#include <vector>

#include "nomagee/conic.hpp"
#include "nomagee/scenario.hpp"
#include "nomagee/solution.hpp"
#include "nomagee/subproblem.hpp"

// Parametric (Dinkelbach) energy-efficiency maximisation: for fixed chi,
// maximise f1(w) - chi f2(w) by SCA, then chi <- f1/f2.
namespace nomagee {

struct DinkelbachState {
    int outer = 0;
    double chi = 0.0;
    BeamformerSet beams;
    double nu = 0.0;                       // sum-rate slack
    std::vector<double> z;                 // 1 + SINR
    std::vector<double> q;                 // rate slack, z >= 2^q
    std::vector<std::vector<double>> rho;  // rho[i][k], k <= i
    std::vector<double> p;                 // per-user power epigraph

    int num_users() const { return beams.num_users(); }
};

DinkelbachState dinkelbach_state_from_beams(const ChannelSet &channels, const BeamformerSet &beams,
                                            const SystemConfig &config);

// f1 / f2 of the beams: identical to gee().
double chi_update(const BeamformerSet &beams, const ChannelSet &channels, const PowerModel &power_model,
                  double noise_var, double bandwidth = 1.0);

struct InnerProgram {
    conic::Program program;
    BeamVariables beams;
    conic::Variable nu, z, q, rho, p;

    static int rho_index(int i, int k) { return i * (i + 1) / 2 + k; }
    std::vector<double> point(const DinkelbachState &state) const;
};

// maximise nu - chi (sum p_i / eps0 + P_loss). Variables: 2KN + 1 + 2K + K(K+1)/2 + K.
InnerProgram build_inner_subproblem(const DinkelbachState &state, double chi, const ChannelSet &channels,
                                    const SystemConfig &config, bool with_min_rate = true);

struct InnerOptions {
    bool with_min_rate = true;
    double tolerance = 0.01; // relative change of the inner objective, scaled by nu
    int max_iterations = 50;
    int outer_index = 0;     // only labels trace rows
    bool keep_iterates = false;
};

struct InnerRun {
    BeamformerSet beams;
    std::vector<double> objective_trace;
    std::vector<DinkelbachTraceRow> trace;
    std::vector<BeamformerSet> iterates;
    int iterations = 0;
    bool converged = false;
    bool failed = false;
};

// SCA on the parametric problem from `start`.
InnerRun solve_inner(const ChannelSet &channels, const SystemConfig &config, double chi, const BeamformerSet &start,
                     const InnerOptions &options, const conic::Backend &backend);

constexpr int kDinkelbachOuterCap = 30;
constexpr int kDinkelbachInnerCap = 50;

// objective_trace holds chi after every outer iteration; iterations_used counts outer iterations.
Solution run_dinkelbach(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options = {});
Solution run_dinkelbach_from(const ChannelSet &channels, const SystemConfig &config, const BeamformerSet &start,
                             const AlgorithmOptions &options = {});

} // namespace nomagee

#endif
