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

// Helpers shared by the unit tests.
#ifndef NOMAGEE_TESTS_UTIL_HPP
#define NOMAGEE_TESTS_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "nomagee/conic.hpp"
#include "nomagee/noma.hpp"
#include "nomagee/scenario.hpp"

namespace testutil {

using nomagee::CVec;
using cd = std::complex<double>;

inline CVec vec(std::initializer_list<cd> xs) {
    CVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (cd x : xs)
        v(i++) = x;
    return v;
}

// Channels kept in the given order (no sorting), gains filled in.
inline nomagee::ChannelSet manual_channels(const std::vector<CVec> &hs) {
    nomagee::ChannelSet set;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        set.channels.push_back(hs[i]);
        set.gains.push_back(hs[i].squaredNorm());
        set.permutation.push_back(i);
        set.distances.push_back(1.0);
    }
    return set;
}

inline nomagee::BeamformerSet beams(const std::vector<CVec> &ws) {
    nomagee::BeamformerSet b;
    b.w = ws;
    return b;
}

// Table-I config with the budget set from a TX-SNR and a channel seed.
inline nomagee::SystemConfig table1_at(double txsnr_db, std::uint64_t seed) {
    auto c = nomagee::table1_config();
    c.p_ava = nomagee::txsnr_to_budget(txsnr_db, c.noise_var);
    c.seed = seed;
    return c;
}

inline nomagee::SystemConfig single_user_config(double gain_distance, double p_ava) {
    auto c = nomagee::table1_config();
    c.num_antennas = 1;
    c.num_users = 1;
    c.distances = {gain_distance};
    c.min_sinr = {1e-2};
    c.p_ava = p_ava;
    return c;
}

// Best GEE over a uniform grid of transmit powers for a single user with channel gain g:
// log2(1 + p g / s2) / (p / eff + p_loss) on [gamma s2 / g, p_ava].
inline double single_user_gee_oracle(double g, const nomagee::SystemConfig &c, int points = 100000) {
    const double lo = c.min_sinr[0] * c.noise_var / g;
    const double hi = c.p_ava;
    double best = 0.0;
    for (int j = 0; j < points; ++j) {
        const double p = lo + (hi - lo) * j / (points - 1);
        const double v = std::log2(1.0 + p * g / c.noise_var) / (p / c.amp_efficiency + c.p_sta + c.p_dyn);
        best = std::max(best, v);
    }
    return best;
}

inline std::size_t count_labels(const nomagee::conic::Program &p, const std::string &prefix) {
    std::size_t n = 0;
    for (const auto &c : p.constraints())
        if (c.label.rfind(prefix, 0) == 0)
            ++n;
    return n;
}

} // namespace testutil

#endif
