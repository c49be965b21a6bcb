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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "doctest.h"
#include "nomagee/baselines.hpp"
#include "nomagee/experiments.hpp"

using namespace nomagee;

namespace {

ResultRow row(int trial, double axis, const std::string &algo, double gee_m, const std::string &status = "converged") {
    ResultRow r;
    r.trial = trial;
    r.axis = axis;
    r.algorithm = algo;
    r.gee_mbits_per_joule = gee_m;
    r.gee_bits_per_joule = gee_m * 1e6;
    r.sum_rate_bits = 2.0 * gee_m;
    r.p_tr_w = 1.5;
    r.p_total_w = 12.3;
    r.iterations = 4;
    r.status = status;
    return r;
}

std::string to_csv(const std::vector<ResultRow> &rows) {
    std::ostringstream out;
    emit_csv(rows, out);
    return out.str();
}

std::size_t count_lines(const std::string &s) {
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("names") {
    for (auto a : {Algorithm::sca, Algorithm::dinkelbach, Algorithm::pmin, Algorithm::srm, Algorithm::zf})
        CHECK(parse_algorithm(to_string(a)) == a);
    for (auto x : {SweepAxis::txsnr_db, SweepAxis::p_loss_dbm, SweepAxis::num_antennas, SweepAxis::path_loss_exponent})
        CHECK(parse_axis(to_string(x)) == x);
    CHECK(parse_axis("kappa") == SweepAxis::path_loss_exponent);
    CHECK_THROWS(parse_algorithm("simplex"));
    CHECK_THROWS(parse_axis("doppler"));
}

TEST_CASE("spec validation and per-point configs") {
    SweepSpec s;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.values = {0.0, 5.0};
    CHECK_NOTHROW(s.validate());
    s.values = {5.0, 0.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.values = {0.0};
    s.trials = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.trials = 2;
    s.algorithms.clear();
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    SweepSpec t;
    t.values = {0.0, 10.0};
    CHECK(t.config_for(10.0, 3).p_ava == doctest::Approx(20.0));
    CHECK(t.config_for(0.0, 3).seed == t.config_for(10.0, 3).seed);
    CHECK(t.config_for(0.0, 3).seed != t.config_for(0.0, 4).seed);

    t.axis = SweepAxis::p_loss_dbm;
    t.txsnr_db = 25.0;
    const auto pl = t.config_for(30.0, 0);
    CHECK(pl.p_sta == doctest::Approx(1.0));
    CHECK(pl.p_dyn == 0.0);
    CHECK(pl.p_ava == doctest::Approx(632.456).epsilon(1e-5));

    t.axis = SweepAxis::num_antennas;
    CHECK(t.config_for(5.0, 0).num_antennas == 5);
    t.axis = SweepAxis::path_loss_exponent;
    CHECK(t.config_for(3.0, 0).path_loss_exponent == 3.0);
}

TEST_CASE("sweep cardinality and paired channels") {
    SweepSpec s;
    s.values = {-5, 0, 5, 10, 15, 20, 25, 30};
    s.algorithms = {Algorithm::sca, Algorithm::srm, Algorithm::zf};
    s.trials = 20;
    s.record_time = false;
    const auto rows = run_sweep(s);
    CHECK(rows.size() == 480);
    for (const auto &r : rows)
        CHECK(r.status != "error");
    // every ZF row is exactly what ZF gives on the trial's channel draw
    for (const auto &r : rows) {
        if (r.algorithm != "zf" || r.trial % 7 != 0)
            continue;
        const auto cfg = s.config_for(r.axis, r.trial);
        const auto direct = run_algorithm(Algorithm::zf, generate_channels(cfg), cfg, r.trial, r.axis, {}, false);
        CHECK(direct == r);
    }
    // rows come sorted by (axis, trial, algorithm order)
    CHECK(rows.front().axis == -5.0);
    CHECK(rows[0].algorithm == "sca");
    CHECK(rows[1].algorithm == "srm");
    CHECK(rows[2].algorithm == "zf");
    CHECK(rows[3].trial == 1);
}

TEST_CASE("failures become rows") {
    auto cfg = table1_config();
    cfg.resize_users(4);
    const auto ch = generate_channels(cfg);
    const auto r = run_algorithm(Algorithm::zf, ch, cfg, 0, 0.0);
    CHECK(r.status == "error");
    CHECK_THROWS(run_design(Algorithm::zf, ch, cfg));

    auto hard = table1_config();
    hard.min_sinr = {1e6, 1e6, 1e6};
    const auto inf = run_algorithm(Algorithm::sca, generate_channels(hard), hard, 0, 10.0);
    CHECK(inf.status == "infeasible");
    CHECK(inf.gee_bits_per_joule > 0.0);

    const auto hard_ch = generate_channels(hard);
    double bound = 0.0;
    for (int i = 0; i < 3; ++i)
        bound += 1e6 * hard.noise_var / hard_ch.channels[static_cast<std::size_t>(i)].squaredNorm();
    const auto pm = run_design(Algorithm::pmin, hard_ch, hard);
    CHECK(pm.status == SolveStatus::infeasible);
    REQUIRE(pm.objective_trace.size() == 1);
    CHECK(pm.objective_trace[0] == doctest::Approx(bound).epsilon(1e-12));
    CHECK(pm.report.p_tr == 0.0);
}

TEST_CASE("CSV emission") {
    const std::string header = std::string(kCsvHeader);
    CHECK(header == "trial,axis,algorithm,gee_bits_per_joule,gee_mbits_per_joule,sum_rate_bits,p_tr_w,p_total_w,"
                    "iterations,status,wall_time_ms");
    const auto empty = to_csv({});
    CHECK(count_lines(empty) == 1);
    CHECK(empty.rfind(header, 0) == 0);
    CHECK(count_lines(to_csv({row(0, 10.0, "sca", 0.1)})) == 2);

    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(format_number(0.1234567891234) == "0.123456789");
    CHECK(format_number(3.0) == "3");
}

TEST_CASE("CSV round trip") {
    std::vector<ResultRow> rows{row(0, -5.0, "sca", 0.0347123456), row(1, 30.0, "zf", 1.0 / 3.0, "odd, \"status\""),
                                row(2, 2.5, "srm", 123456789.0)};
    // rounding happens when rows are built; mimic it here
    for (auto &r : rows) {
        r.gee_mbits_per_joule = std::stod(format_number(r.gee_mbits_per_joule));
        r.gee_bits_per_joule = std::stod(format_number(r.gee_bits_per_joule));
        r.sum_rate_bits = std::stod(format_number(r.sum_rate_bits));
    }
    std::istringstream in(to_csv(rows));
    CHECK(parse_csv(in) == rows);

    SweepSpec s;
    s.values = {0.0, 20.0};
    s.algorithms = {Algorithm::sca, Algorithm::zf};
    s.trials = 2;
    const auto real = run_sweep(s);
    const auto path = (std::filesystem::temp_directory_path() / "nomagee_roundtrip.csv").string();
    emit_csv(real, path);
    CHECK(parse_csv_file(path) == real);
    std::remove(path.c_str());

    CHECK_THROWS(emit_csv(real, std::string("/nonexistent-dir/x.csv")));
    std::istringstream bad_header("trial,axis\n");
    CHECK_THROWS(parse_csv(bad_header));
    std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
    CHECK_THROWS(parse_csv(short_row));
}

TEST_CASE("summaries") {
    const auto one = summarize({row(0, 1.0, "sca", 0.25)});
    REQUIRE(one.size() == 1);
    CHECK(one[0].mean == 0.25);
    CHECK(one[0].median == 0.25);
    CHECK(one[0].stddev == 0.0);

    const auto two = summarize({row(0, 1.0, "sca", 1.0), row(1, 1.0, "sca", 3.0)});
    REQUIRE(two.size() == 1);
    CHECK(two[0].mean == 2.0);
    CHECK(two[0].median == 2.0);
    CHECK(two[0].stddev == doctest::Approx(std::sqrt(2.0)));

    const auto mixed = summarize({row(0, 1.0, "sca", 1.0), row(1, 1.0, "sca", 7.0, "error"), row(0, 2.0, "sca", 2.0),
                                  row(0, 1.0, "zf", 0.5)});
    CHECK(mixed.size() == 3);
    CHECK(mixed[0].count == 1);
    const auto rates = summarize({row(0, 1.0, "sca", 1.0)}, Metric::sum_rate);
    CHECK(rates[0].mean == 2.0);
    const auto its = summarize({row(0, 1.0, "sca", 1.0)}, Metric::iterations);
    CHECK(its[0].mean == 4.0);
    CHECK_THROWS(summarize({}));

    const auto curve = median_curve(mixed, "sca");
    REQUIRE(curve.size() == 2);
    CHECK(curve[1] == std::pair<double, double>{2.0, 2.0});

    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("knee detection") {
    CHECK(find_knee({{0, 1.0}, {5, 2.0}, {10, 2.01}, {15, 2.011}}) == 5.0);
    CHECK(find_knee({{0, 1.0}, {5, 2.0}, {10, 3.0}}) == std::nullopt);
    CHECK(find_knee({{0, 1.0}, {5, 0.5}}) == 0.0);
    CHECK(find_knee({{0, 1.0}, {5, 1.02}, {10, 1.03}}, 0.05) == 0.0);
    CHECK(find_knee({}) == std::nullopt);
}

}

TEST_SUITE("determinism") {

TEST_CASE("same bytes for every thread count and for the serial reference") {
    SweepSpec s;
    s.values = {0.0, 10.0, 20.0};
    s.algorithms = {Algorithm::sca, Algorithm::dinkelbach, Algorithm::zf};
    s.trials = 4;
    s.master_seed = 77;
    s.record_time = false;
    const std::string serial = to_csv(run_sweep_serial(s));
    CHECK(count_lines(serial) == 1 + 3 * 4 * 3);
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        CHECK(to_csv(run_sweep(s)) == serial);
    }
    omp_set_num_threads(saved);
    CHECK(to_csv(run_sweep(s)) == serial);
}

TEST_CASE("the master seed changes the draws") {
    SweepSpec s;
    s.values = {10.0};
    s.algorithms = {Algorithm::zf};
    s.trials = 3;
    s.record_time = false;
    const auto a = run_sweep(s);
    s.master_seed = 2;
    const auto b = run_sweep(s);
    CHECK(a != b);
}

}
