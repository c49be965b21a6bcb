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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nomagee/noma.hpp"
#include "nomagee/scenario.hpp"
#include "test_util.hpp"

using namespace nomagee;
using testutil::vec;

TEST_SUITE("scenario") {

TEST_CASE("generate_channels: shape, ordering and seed determinism") {
    auto c = table1_config();
    c.seed = 42;
    const ChannelSet a = generate_channels(c);
    REQUIRE(a.num_users() == 3);
    REQUIRE(a.num_antennas() == 3);
    for (std::size_t i = 0; i + 1 < a.gains.size(); ++i)
        CHECK(a.gains[i] >= a.gains[i + 1]);
    for (std::size_t i = 0; i < a.gains.size(); ++i)
        CHECK(a.gains[i] == doctest::Approx(a.channels[i].squaredNorm()).epsilon(1e-14));

    const ChannelSet b = generate_channels(c);
    for (std::size_t i = 0; i < a.channels.size(); ++i) {
        CHECK(a.permutation[i] == b.permutation[i]);
        for (Eigen::Index n = 0; n < a.channels[i].size(); ++n)
            CHECK(a.channels[i](n) == b.channels[i](n)); // bit-identical
    }

    c.seed = 43;
    const ChannelSet d = generate_channels(c);
    CHECK(d.channels[0](0) != a.channels[0](0));
}

TEST_CASE("generate_channels: distance scaling") {
    // Same seed, distances (1, 4) and kappa 2: the small-scale draw is shared, scale factors are 1 and 1/4.
    auto near = table1_config();
    near.num_users = 2;
    near.distances = {1.0, 1.0};
    near.min_sinr = {0.01, 0.01};
    near.path_loss_exponent = 2.0;
    near.seed = 9;
    auto far = near;
    far.distances = {1.0, 4.0};
    const ChannelSet a = generate_channels(near);
    const ChannelSet b = generate_channels(far);
    for (std::size_t p = 0; p < 2; ++p) {
        // locate the draw of original user p in both sets
        auto pick = [&](const ChannelSet &s) {
            for (std::size_t i = 0; i < 2; ++i)
                if (s.permutation[i] == p)
                    return s.channels[i];
            return CVec{};
        };
        const double scale = p == 0 ? 1.0 : 0.25;
        CHECK((pick(b) - scale * pick(a)).norm() <= 1e-14);
    }
}

TEST_CASE("generate_channels: unit-variance entries times the path loss") {
    auto c = table1_config();
    c.num_users = 1;
    c.num_antennas = 4;
    c.distances = {2.0};
    c.min_sinr = {0.0};
    c.path_loss_exponent = 2.0;
    double sum = 0.0;
    const int draws = 4000;
    for (int t = 0; t < draws; ++t) {
        c.seed = trial_seed(11, static_cast<std::uint64_t>(t));
        sum += generate_channels(c).gains[0];
    }
    // E||h||^2 = N d^-kappa = 1, std of the mean ~ 0.5 / sqrt(4000)
    CHECK(sum / draws == doctest::Approx(1.0).epsilon(0.04));
}

TEST_CASE("order_users") {
    SUBCASE("norms (1, 3, 2) give order (b, c, a)") {
        const ChannelSet s = order_users({vec({1.0}), vec({3.0}), vec({2.0})});
        CHECK(s.permutation == std::vector<std::size_t>{1, 2, 0});
        CHECK(s.gains == std::vector<double>{9.0, 4.0, 1.0});
    }
    SUBCASE("already sorted input keeps the identity") {
        const ChannelSet s = order_users({vec({3.0, 0.0}), vec({0.0, 2.0}), vec({1.0, 0.0})});
        CHECK(s.permutation == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("ties keep the original order") {
        const ChannelSet s = order_users({vec({2.0}), vec({{0.0, 2.0}})});
        CHECK(s.permutation == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(order_users({}), std::invalid_argument);
        CHECK_THROWS_AS(order_users({vec({1.0}), vec({1.0, 2.0})}), std::invalid_argument);
    }
}

TEST_CASE("txsnr_to_budget and dBm conversion") {
    CHECK(txsnr_to_budget(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(txsnr_to_budget(2.0, 2.0) == doctest::Approx(3.1698).epsilon(1e-4));
    CHECK(txsnr_to_budget(25.0, 2.0) == doctest::Approx(632.456).epsilon(1e-5));
    CHECK_THROWS_AS(txsnr_to_budget(10.0, 0.0), std::invalid_argument);
    CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0));
    CHECK(dbm_to_watts(10.0) == doctest::Approx(0.01));
    CHECK(dbm_to_watts(5.0) == doctest::Approx(0.0031623).epsilon(1e-4));
}

TEST_CASE("SystemConfig validation") {
    CHECK_NOTHROW(table1_config().validate());
    auto bad = table1_config();
    bad.distances = {1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = table1_config();
    bad.noise_var = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = table1_config();
    bad.amp_efficiency = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = table1_config();
    bad.min_sinr[1] = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = table1_config();
    bad.resize_users(5);
    CHECK(bad.distances.size() == 5);
    CHECK(bad.distances.back() == 10.0);
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("trial_seed spreads trials") {
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
}

}
