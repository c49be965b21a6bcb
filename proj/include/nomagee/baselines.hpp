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

#ifndef NOMAGEE_BASELINES_HPP
#define NOMAGEE_BASELINES_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nomagee/conic.hpp"
#include "nomagee/scenario.hpp"
#include "nomagee/solution.hpp"

namespace nomagee {

struct FeasibilityVerdict {
    bool feasible = false;
    bool decided = false;            // false when P-Min failed before settling either way
    double p_star = 0.0;             // minimum transmit power for the targets (a lower bound when P-Min was skipped)
    Solution pmin;                   // the P-Min solution behind p_star
    std::optional<Solution> fallback; // sum-rate design, attached when decided infeasible
};

// sum_i gamma_i sigma^2 / ||h_i||^2: user i alone needs |h_i^H w_i|^2 >= gamma_i sigma^2.
double pmin_lower_bound(const ChannelSet &channels, const std::vector<double> &targets, double noise_var);

// Shared-direction beams meeting the targets: w_i = c_i u with u maximising min_k Re(h_k^H u).
// The c_i are non-decreasing, so the SIC chain holds. Throws InfeasibleInstance if no direction
// reaches every user.
BeamformerSet common_direction_beams(const ChannelSet &channels, const std::vector<double> &targets,
                                     double noise_var, const conic::Backend &backend);

// Minimum power for the SINR targets (no budget), SCA over the SIC linearisation.
// Tolerance and cap default to 1e-7 and 100; `warm_start` must satisfy the targets.
Solution solve_pmin(const ChannelSet &channels, const std::vector<double> &targets, const SystemConfig &config,
                    const AlgorithmOptions &options = {}, const BeamformerSet *warm_start = nullptr);

struct SdpSolution {
    conic::Status status = conic::Status::numerical_failure;
    std::vector<Eigen::MatrixXcd> matrices;
    std::vector<double> powers;      // Tr W_i
    std::vector<double> rank_ratios; // lambda_2 / lambda_1
    BeamformerSet beams;             // sqrt(lambda_1) times the principal eigenvector
    bool rank_one = false;           // every ratio below kRankOneThreshold

    bool ok() const { return status == conic::Status::optimal; }
    double total_power() const;
};

constexpr double kRankOneThreshold = 1e-4;

// Lifted power minimisation over W_i = w_i w_i^H with the rank constraint dropped.
// Throws conic::CapabilityError when the backend cannot handle PSD cones.
SdpSolution solve_pmin_sdp(const ChannelSet &channels, const std::vector<double> &targets, double noise_var,
                           const conic::Backend *backend = nullptr);

// Sum-rate maximisation under the budget and SIC chain, no minimum rates.
// Starts from the P-Min beams (computed when not given), scaled into the budget; all-zero targets
// or a failed P-Min fall back to a common-direction start at full power.
Solution solve_srm(const ChannelSet &channels, const SystemConfig &config, const AlgorithmOptions &options = {},
                   const BeamformerSet *pmin_beams = nullptr);

// Water-filling p_k = max(0, mu - noise / a_k) with sum p_k = budget.
std::vector<double> water_filling(const std::vector<double> &gains, double noise_var, double budget);

// Zero-forcing with every user served at once and decoded without SIC.
// Throws std::invalid_argument when K > N.
Solution solve_zf_oma(const ChannelSet &channels, const SystemConfig &config, bool equal_power = false);

// p_star <= p_ava decides feasibility. P-Min is skipped when pmin_lower_bound already exceeds p_ava.
// With `with_fallback`, instances decided infeasible get the SRM design.
FeasibilityVerdict feasibility_gate(const ChannelSet &channels, const SystemConfig &config,
                                    const AlgorithmOptions &options = {}, bool with_fallback = true);

} // namespace nomagee

#endif
