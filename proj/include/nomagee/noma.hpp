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

#ifndef NOMAGEE_NOMA_HPP
#define NOMAGEE_NOMA_HPP

#include <cstddef>
#include <vector>

#include "nomagee/scenario.hpp"

// Ground-truth evaluation of a beamformer set. Every solver result is checked
// against these functions; none of them depend on the optimization code.
namespace nomagee {

struct BeamformerSet {
    std::vector<CVec> w;

    int num_users() const { return static_cast<int>(w.size()); }
    static BeamformerSet zeros(int num_users, int num_antennas);
};

struct PowerModel {
    double amp_efficiency = 0.65;
    double p_sta = 0.0;
    double p_dyn = 0.0;
    int num_antennas = 1;
    double p_ava = 1.0;

    double p_loss() const { return p_sta + num_antennas * p_dyn; }
};

struct PowerSplit {
    double p_tr = 0.0;
    double p_total = 0.0;
};

// How a receiver treats the other users' streams.
enum class Decoding {
    sic,        // NOMA: decode and cancel weaker users, interference from stronger ones
    single_user // OMA/ZF: every other stream is interference
};

struct PerformanceReport {
    std::vector<std::vector<double>> pair_sinrs; // pair_sinrs[i][k], k <= i
    std::vector<double> effective_sinrs;
    std::vector<double> rates; // bits/s
    double sum_rate = 0.0;     // bits/s
    double p_tr = 0.0;
    double p_total = 0.0;
    double gee = 0.0; // bits/joule
    bool sic_ok = false;
    bool min_rate_ok = false;
    bool budget_ok = false;

    bool all_ok() const { return sic_ok && min_rate_ok && budget_ok; }
};

constexpr double kFeasibilityTolerance = 1e-6;

// SINR at user k when decoding the stream of user i (0-based, k <= i).
double pair_sinr(const ChannelSet &channels, const BeamformerSet &beams, int i, int k, double noise_var);
std::vector<double> effective_sinrs(const ChannelSet &channels, const BeamformerSet &beams, double noise_var,
                                    Decoding decoding = Decoding::sic);
std::vector<double> rates(const std::vector<double> &effective_sinrs, double bandwidth);
PowerSplit total_power(const BeamformerSet &beams, const PowerModel &model);
double gee(const ChannelSet &channels, const BeamformerSet &beams, const PowerModel &model, double noise_var,
           double bandwidth, Decoding decoding = Decoding::sic);

// |h_i^H w_K|^2 >= ... >= |h_i^H w_1|^2 for every i, within relative tolerance.
bool sic_chain_holds(const ChannelSet &channels, const BeamformerSet &beams, double tolerance = kFeasibilityTolerance);

// Evaluates with the normalized bandwidth B_w = 1 unless `bandwidth` is given.
PerformanceReport validate_solution(const ChannelSet &channels, const BeamformerSet &beams, const SystemConfig &config,
                                    Decoding decoding = Decoding::sic, double bandwidth = 1.0);

void check_dimensions(const ChannelSet &channels, const BeamformerSet &beams);

} // namespace nomagee

#endif
