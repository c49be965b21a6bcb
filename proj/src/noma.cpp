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

#include "nomagee/noma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nomagee {

BeamformerSet BeamformerSet::zeros(int num_users, int num_antennas) {
    BeamformerSet b;
    b.w.assign(static_cast<std::size_t>(num_users), CVec::Zero(num_antennas));
    return b;
}

void check_dimensions(const ChannelSet &channels, const BeamformerSet &beams) {
    if (beams.w.size() != channels.channels.size())
        throw std::invalid_argument("beamformer count does not match the user count");
    for (const auto &w : beams.w)
        if (w.size() != channels.num_antennas())
            throw std::invalid_argument("beamformer length does not match the antenna count");
}

namespace {

double received(const CVec &h, const CVec &w) { return std::norm(h.dot(w)); } // |h^H w|^2

} // namespace

double pair_sinr(const ChannelSet &channels, const BeamformerSet &beams, int i, int k, double noise_var) {
    const int K = channels.num_users();
    if (i < 0 || i >= K || k < 0 || k > i)
        throw std::out_of_range("pair_sinr: requires 0 <= k <= i < K");
    if (static_cast<int>(beams.w.size()) != K)
        throw std::invalid_argument("pair_sinr: beamformer count does not match the user count");
    const CVec &hk = channels.channels[static_cast<std::size_t>(k)];
    double interference = noise_var;
    for (int j = 0; j < i; ++j)
        interference += received(hk, beams.w[static_cast<std::size_t>(j)]);
    return received(hk, beams.w[static_cast<std::size_t>(i)]) / interference;
}

std::vector<double> effective_sinrs(const ChannelSet &channels, const BeamformerSet &beams, double noise_var,
                                    Decoding decoding) {
    check_dimensions(channels, beams);
    const int K = channels.num_users();
    std::vector<double> out(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
        if (decoding == Decoding::sic) {
            double g = std::numeric_limits<double>::infinity();
            for (int k = 0; k <= i; ++k)
                g = std::min(g, pair_sinr(channels, beams, i, k, noise_var));
            out[static_cast<std::size_t>(i)] = g;
        } else {
            const CVec &hi = channels.channels[static_cast<std::size_t>(i)];
            double interference = noise_var;
            for (int j = 0; j < K; ++j)
                if (j != i)
                    interference += received(hi, beams.w[static_cast<std::size_t>(j)]);
            out[static_cast<std::size_t>(i)] = received(hi, beams.w[static_cast<std::size_t>(i)]) / interference;
        }
    }
    return out;
}

std::vector<double> rates(const std::vector<double> &effective_sinrs, double bandwidth) {
    std::vector<double> r;
    r.reserve(effective_sinrs.size());
    for (double g : effective_sinrs) {
        if (g < 0.0)
            throw std::invalid_argument("rates: negative SINR");
        r.push_back(bandwidth * std::log2(1.0 + g));
    }
    return r;
}

PowerSplit total_power(const BeamformerSet &beams, const PowerModel &model) {
    PowerSplit p;
    for (const auto &w : beams.w)
        p.p_tr += w.squaredNorm();
    p.p_total = p.p_tr / model.amp_efficiency + model.p_loss();
    return p;
}

double gee(const ChannelSet &channels, const BeamformerSet &beams, const PowerModel &model, double noise_var,
           double bandwidth, Decoding decoding) {
    const auto r = rates(effective_sinrs(channels, beams, noise_var, decoding), bandwidth);
    const PowerSplit p = total_power(beams, model);
    if (!(p.p_total > 0.0))
        throw std::domain_error("gee: total power consumption is zero");
    double sum = 0.0;
    for (double x : r)
        sum += x;
    return sum / p.p_total;
}

bool sic_chain_holds(const ChannelSet &channels, const BeamformerSet &beams, double tolerance) {
    check_dimensions(channels, beams);
    const int K = channels.num_users();
    for (int i = 0; i < K; ++i) {
        const CVec &hi = channels.channels[static_cast<std::size_t>(i)];
        for (int j = 0; j + 1 < K; ++j) {
            const double weaker = received(hi, beams.w[static_cast<std::size_t>(j + 1)]);
            const double stronger = received(hi, beams.w[static_cast<std::size_t>(j)]);
            const double scale = std::max({weaker, stronger, 1e-300});
            if (weaker < stronger - tolerance * scale)
                return false;
        }
    }
    return true;
}

PerformanceReport validate_solution(const ChannelSet &channels, const BeamformerSet &beams, const SystemConfig &config,
                                    Decoding decoding, double bandwidth) {
    check_dimensions(channels, beams);
    if (static_cast<int>(config.min_sinr.size()) != channels.num_users())
        throw std::invalid_argument("validate_solution: config user count does not match the channels");
    PerformanceReport rep;
    const int K = channels.num_users();
    rep.pair_sinrs.resize(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        for (int k = 0; k <= i; ++k)
            rep.pair_sinrs[static_cast<std::size_t>(i)].push_back(pair_sinr(channels, beams, i, k, config.noise_var));
    rep.effective_sinrs = effective_sinrs(channels, beams, config.noise_var, decoding);
    rep.rates = rates(rep.effective_sinrs, bandwidth);
    for (double r : rep.rates)
        rep.sum_rate += r;
    const PowerModel model = config.power_model();
    const PowerSplit p = total_power(beams, model);
    rep.p_tr = p.p_tr;
    rep.p_total = p.p_total;
    rep.gee = p.p_total > 0.0 ? rep.sum_rate / p.p_total : 0.0;
    rep.sic_ok = sic_chain_holds(channels, beams);
    rep.min_rate_ok = true;
    for (int i = 0; i < K; ++i)
        if (rep.effective_sinrs[static_cast<std::size_t>(i)] <
            config.min_sinr[static_cast<std::size_t>(i)] * (1.0 - kFeasibilityTolerance))
            rep.min_rate_ok = false;
    rep.budget_ok = rep.p_tr <= config.p_ava * (1.0 + kFeasibilityTolerance);
    return rep;
}

} // namespace nomagee
