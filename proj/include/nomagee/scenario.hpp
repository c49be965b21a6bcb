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

#ifndef NOMAGEE_SCENARIO_HPP
#define NOMAGEE_SCENARIO_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace nomagee {

using CVec = Eigen::VectorXcd;

struct PowerModel;

// Every field of one simulated downlink. Powers in watts, bandwidth in hertz.
struct SystemConfig {
    int num_antennas = 3;
    int num_users = 3;
    std::vector<double> distances{1.0, 5.5, 10.0};
    double path_loss_exponent = 1.0;
    double noise_var = 2.0;
    double bandwidth_hz = 1e6;
    std::vector<double> min_sinr{1e-2, 1e-2, 1e-2};
    double amp_efficiency = 0.65;
    double p_sta = 10.0; // 40 dBm
    double p_dyn = 0.0;
    double p_ava = 20.0; // 10 dB TX-SNR at noise_var 2
    double sca_tolerance = 0.01;
    double dinkelbach_tolerance = 0.01;
    int max_iterations = 50;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
    PowerModel power_model() const;
    // Resizes per-user vectors after num_users changed (repeats the last entry).
    void resize_users(int k);
};

SystemConfig table1_config();

// Users ordered by descending channel gain; index 0 is the strongest user.
struct ChannelSet {
    std::vector<CVec> channels;
    std::vector<double> gains;          // ||h_i||^2
    std::vector<std::size_t> permutation; // ordered position -> original user index
    std::vector<double> distances;       // ordered like `channels`
    std::uint64_t seed = 0;

    int num_users() const { return static_cast<int>(channels.size()); }
    int num_antennas() const { return channels.empty() ? 0 : static_cast<int>(channels.front().size()); }
};

// Seed of the channel draw for one Monte-Carlo trial.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

// Rayleigh fading scaled by sqrt(d^-kappa), then ordered.
ChannelSet generate_channels(const SystemConfig &config);

// Stable descending sort by ||h||^2; ties keep the original order.
ChannelSet order_users(const std::vector<CVec> &raw_channels);

double txsnr_to_budget(double txsnr_db, double noise_var);
double dbm_to_watts(double dbm);

} // namespace nomagee

#endif
