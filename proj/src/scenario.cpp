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

#include "nomagee/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "nomagee/noma.hpp"

namespace nomagee {

void SystemConfig::validate() const {
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be at least 1");
    if (num_users < 1)
        throw std::invalid_argument("num_users must be at least 1");
    const auto k = static_cast<std::size_t>(num_users);
    if (distances.size() != k)
        throw std::invalid_argument("distances must have num_users entries");
    if (min_sinr.size() != k)
        throw std::invalid_argument("min_sinr must have num_users entries");
    for (double d : distances)
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("distances must be positive and finite");
    for (double g : min_sinr)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw std::invalid_argument("min_sinr entries must be nonnegative");
    if (!(path_loss_exponent >= 0.0))
        throw std::invalid_argument("path_loss_exponent must be nonnegative");
    if (!(noise_var > 0.0))
        throw std::invalid_argument("noise_var must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be positive");
    if (!(amp_efficiency > 0.0 && amp_efficiency <= 1.0))
        throw std::invalid_argument("amp_efficiency must lie in (0, 1]");
    if (!(p_sta >= 0.0) || !(p_dyn >= 0.0))
        throw std::invalid_argument("p_sta and p_dyn must be nonnegative");
    if (!(p_ava > 0.0))
        throw std::invalid_argument("p_ava must be positive");
    if (!(sca_tolerance > 0.0) || !(dinkelbach_tolerance > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
}

PowerModel SystemConfig::power_model() const {
    return PowerModel{amp_efficiency, p_sta, p_dyn, num_antennas, p_ava};
}

void SystemConfig::resize_users(int k) {
    const auto n = static_cast<std::size_t>(k);
    const double d_last = distances.empty() ? 1.0 : distances.back();
    const double g_last = min_sinr.empty() ? 0.0 : min_sinr.back();
    distances.resize(n, d_last);
    min_sinr.resize(n, g_last);
    num_users = k;
}

SystemConfig table1_config() { return SystemConfig{}; }

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    // splitmix64 finalizer over (master, trial)
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ChannelSet generate_channels(const SystemConfig &config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::vector<CVec> raw;
    raw.reserve(static_cast<std::size_t>(config.num_users));
    for (int i = 0; i < config.num_users; ++i) {
        CVec g(config.num_antennas);
        for (int n = 0; n < config.num_antennas; ++n) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(n) = {re, im};
        }
        const double scale = std::sqrt(std::pow(config.distances[static_cast<std::size_t>(i)], -config.path_loss_exponent));
        raw.push_back(scale * g);
    }
    ChannelSet set = order_users(raw);
    set.seed = config.seed;
    set.distances.clear();
    for (std::size_t p : set.permutation)
        set.distances.push_back(config.distances[p]);
    return set;
}

ChannelSet order_users(const std::vector<CVec> &raw_channels) {
    if (raw_channels.empty())
        throw std::invalid_argument("order_users: no channels");
    const auto n = raw_channels.front().size();
    for (const auto &h : raw_channels)
        if (h.size() != n)
            throw std::invalid_argument("order_users: channels have different lengths");
    std::vector<std::size_t> perm(raw_channels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> gains(raw_channels.size());
    for (std::size_t i = 0; i < raw_channels.size(); ++i)
        gains[i] = raw_channels[i].squaredNorm();
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    ChannelSet set;
    set.permutation = perm;
    for (std::size_t p : perm) {
        set.channels.push_back(raw_channels[p]);
        set.gains.push_back(gains[p]);
    }
    return set;
}

double txsnr_to_budget(double txsnr_db, double noise_var) {
    if (!(noise_var > 0.0))
        throw std::invalid_argument("txsnr_to_budget: noise_var must be positive");
    return noise_var * std::pow(10.0, txsnr_db / 10.0);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

} // namespace nomagee
