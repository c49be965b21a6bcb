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
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "nomagee/io.hpp"
#include "test_util.hpp"

using namespace nomagee;

TEST_SUITE("io") {

TEST_CASE("config files") {
    std::istringstream in(R"(# comment line
num_users = 2
distances = 1, 4   # trailing comment
min_sinr = 0.5
path_loss_exponent = 2
p_ava = 7.5
seed = 18446744073709551615

)");
    const auto c = parse_config(in);
    CHECK(c.num_users == 2);
    CHECK(c.distances == std::vector<double>{1.0, 4.0});
    CHECK(c.min_sinr == std::vector<double>{0.5, 0.5});
    CHECK(c.path_loss_exponent == 2.0);
    CHECK(c.p_ava == 7.5);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.num_antennas == 3);

    std::ostringstream out;
    write_config(c, out);
    std::istringstream back(out.str());
    const auto d = parse_config(back);
    CHECK(d.distances == c.distances);
    CHECK(d.min_sinr == c.min_sinr);
    CHECK(d.p_ava == c.p_ava);
    CHECK(d.seed == c.seed);

    std::istringstream unknown("num_users = 3\nwarp = 9\n");
    try {
        parse_config(unknown);
        FAIL("unknown key accepted");
    } catch (const std::runtime_error &e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream mismatch("num_users = 2\ndistances = 1,2,3\n");
    CHECK_THROWS(parse_config(mismatch));
    std::istringstream invalid("noise_var = -1\n");
    CHECK_THROWS(parse_config(invalid));
    std::istringstream garbage("p_ava = lots\n");
    CHECK_THROWS(parse_config(garbage));
    CHECK_THROWS(load_config("/nonexistent/config.cfg"));
}

TEST_CASE("sweep specs") {
    std::istringstream in(R"(axis = txsnr_db
values = -5:5:30
algorithms = sca,srm,zf
trials = 20
master_seed = 3
record_time = false
p_sta = 1
)");
    const auto s = parse_sweep_spec(in);
    CHECK(s.axis == SweepAxis::txsnr_db);
    CHECK(s.values == std::vector<double>{-5, 0, 5, 10, 15, 20, 25, 30});
    CHECK(s.algorithms == std::vector<Algorithm>{Algorithm::sca, Algorithm::srm, Algorithm::zf});
    CHECK(s.trials == 20);
    CHECK(s.master_seed == 3);
    CHECK_FALSE(s.record_time);
    CHECK(s.base.p_sta == 1.0);

    std::istringstream frac("axis = p_loss_dbm\nvalues = -10:2.5:0\n");
    CHECK(parse_sweep_spec(frac).values == std::vector<double>{-10, -7.5, -5, -2.5, 0});
    std::istringstream missing("axis = kappa\n");
    CHECK_THROWS(parse_sweep_spec(missing));
    std::istringstream backwards("values = 5:1:0\n");
    CHECK_THROWS(parse_sweep_spec(backwards));
}

TEST_CASE("channel and beam files round-trip exactly") {
    auto cfg = table1_config();
    cfg.seed = 99;
    const auto ch = generate_channels(cfg);
    std::stringstream buf;
    dump_channels(ch, buf);
    const auto back = parse_channels(buf);
    REQUIRE(back.num_users() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(back.permutation[i] == ch.permutation[i]);
        CHECK(back.distances[i] == ch.distances[i]);
        CHECK((back.channels[i] - ch.channels[i]).norm() == 0.0);
        CHECK(back.gains[i] == ch.gains[i]);
    }

    BeamformerSet b = BeamformerSet::zeros(3, 3);
    b.w[1](2) = {1.0 / 3.0, -2.5e-17};
    std::stringstream bb;
    dump_beams(b, bb);
    const auto bback = parse_beams(bb);
    for (int i = 0; i < 3; ++i)
        CHECK((bback.w[i] - b.w[i]).norm() == 0.0);

    const auto dir = std::filesystem::temp_directory_path();
    save_channels(ch, (dir / "nomagee_h.txt").string());
    save_beams(b, (dir / "nomagee_w.txt").string());
    CHECK(load_channels((dir / "nomagee_h.txt").string()).channels[2] == ch.channels[2]);
    CHECK(load_beams((dir / "nomagee_w.txt").string()).w[1] == b.w[1]);
    std::filesystem::remove(dir / "nomagee_h.txt");
    std::filesystem::remove(dir / "nomagee_w.txt");
}

TEST_CASE("malformed vector files") {
    std::istringstream repeated("0 1,0\n0 0,1\n");
    CHECK_THROWS(parse_beams(repeated));
    std::istringstream gap("0 1,0\n2 0,1\n");
    CHECK_THROWS(parse_beams(gap));
    std::istringstream ragged("0 1,0 1,1\n1 0,1\n");
    CHECK_THROWS(parse_beams(ragged));
    std::istringstream token("0 1;0\n");
    CHECK_THROWS(parse_beams(token));
    std::istringstream no_distance("0 1,0\n");
    CHECK_THROWS(parse_channels(no_distance));
}

}
