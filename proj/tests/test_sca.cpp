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
#include "nomagee/baselines.hpp"
#include "nomagee/sca.hpp"
#include "test_util.hpp"

using namespace nomagee;
using testutil::count_labels;
using testutil::manual_channels;
using testutil::table1_at;
using testutil::vec;

TEST_SUITE("sca") {

TEST_CASE("subproblem size for K = 3, N = 3") {
    const auto cfg = table1_at(10.0, 3);
    const auto ch = generate_channels(cfg);
    const ScaState s = initialize_state(ch, cfg);
    CHECK(s.num_scalar_variables() == 33);
    const ScaProgram sp = build_subproblem(s, ch, cfg);
    CHECK(sp.program.num_variables() == 33);
    CHECK(count_labels(sp.program, "signal_") == 6);
    CHECK(count_labels(sp.program, "interference_") == 6);
    CHECK(count_labels(sp.program, "rate_") == 3);
    CHECK(count_labels(sp.program, "min_rate_") == 6);
    CHECK(count_labels(sp.program, "sic_") == 6);
    CHECK(count_labels(sp.program, "budget") == 1);
    CHECK(count_labels(sp.program, "epigraph") == 1);
    CHECK(sp.program.num_constraints(conic::ConeKind::exp2) == 3);
    // The state itself is a feasible point of its own subproblem.
    CHECK(sp.program.max_violation(sp.point(s)) <= 1e-9);
}

TEST_CASE("single-user subproblem has no SIC chain") {
    auto cfg = testutil::single_user_config(1.0, 10.0);
    cfg.num_antennas = 2;
    const auto ch = manual_channels({vec({1.0, 0.5})});
    const ScaState s = initialize_state(ch, cfg);
    const ScaProgram sp = build_subproblem(s, ch, cfg);
    CHECK(sp.program.num_variables() == 2 * 2 + 3 + 1 + 2);
    CHECK(count_labels(sp.program, "sic_") == 0);
    CHECK(count_labels(sp.program, "interference_") == 1);
    for (const auto &c : sp.program.constraints())
        if (c.label.rfind("interference_", 0) == 0)
            CHECK(c.kind == conic::ConeKind::linear);
}

TEST_CASE("initialize_state closed form") {
    auto cfg = testutil::single_user_config(1.0, 10.0);
    cfg.min_sinr = {1.0};
    cfg.noise_var = 1.0;
    const auto ch = manual_channels({vec({1.0})});
    const ScaState s = initialize_state(ch, cfg);
    CHECK(s.beams.w[0].squaredNorm() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(s.zeta[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(s.delta[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(s.theta[0][0] == doctest::Approx(1.0));
}

TEST_CASE("zero targets start from near-zero beams with slacks at their floors") {
    auto cfg = table1_at(10.0, 4);
    cfg.min_sinr = {0.0, 0.0, 0.0};
    const auto ch = generate_channels(cfg);
    const ScaState s = initialize_state(ch, cfg);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.beams.w[i].squaredNorm() < 1e-8);
        CHECK(s.zeta[i] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.delta[i] == doctest::Approx(0.0).epsilon(1e-6));
    }
    const Solution sol = run_sca(ch, cfg);
    CHECK(sol.ok());
    CHECK(sol.report.gee > 0.0);
}

TEST_CASE("initial subproblems solve to optimality") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto cfg = table1_at(5.0 * static_cast<double>(seed - 1), seed);
        const auto ch = generate_channels(cfg);
        const auto res = conic::solve(build_subproblem(initialize_state(ch, cfg), ch, cfg).program);
        CHECK(res.optimal());
    }
}

TEST_CASE("unreachable targets") {
    auto cfg = table1_at(10.0, 1);
    cfg.min_sinr = {1e6, 1e6, 1e6};
    const auto ch = generate_channels(cfg);
    CHECK_THROWS_AS(initialize_state(ch, cfg), InfeasibleInstance);
    const Solution sol = run_sca(ch, cfg);
    CHECK(sol.status == SolveStatus::infeasible);
    CHECK(sol.report.budget_ok);
}

TEST_CASE("iterates are feasible and the surrogate is conservative") {
    const auto cfg = table1_at(10.0, 8);
    const auto ch = generate_channels(cfg);
    AlgorithmOptions opts;
    opts.keep_iterates = true;
    const Solution sol = run_sca(ch, cfg, opts);
    REQUIRE(sol.status == SolveStatus::converged);
    CHECK(sol.iterates.size() == static_cast<std::size_t>(sol.iterations_used) + 1);
    CHECK(sol.sca_trace.size() == static_cast<std::size_t>(sol.iterations_used));
    const PowerModel pm = cfg.power_model();
    for (std::size_t n = 1; n < sol.iterates.size(); ++n) {
        const auto rep = validate_solution(ch, sol.iterates[n], cfg);
        CHECK(rep.all_ok());
        CHECK(sol.sca_trace[n - 1].sqrt_alpha <= gee(ch, sol.iterates[n], pm, cfg.noise_var, 1.0) * (1.0 + 1e-6));
    }
    for (std::size_t n = 1; n < sol.objective_trace.size(); ++n)
        CHECK(sol.objective_trace[n] >= sol.objective_trace[n - 1] - 1e-6);
    CHECK(sol.report.all_ok());
}

TEST_CASE("single-user scalar channel matches the grid oracle") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto cfg = testutil::single_user_config(1.0, txsnr_to_budget(10.0, 2.0));
        cfg.seed = seed;
        const auto ch = generate_channels(cfg);
        const double oracle = testutil::single_user_gee_oracle(ch.gains[0], cfg);
        const Solution sol = run_sca(ch, cfg);
        REQUIRE(sol.ok());
        CHECK(sol.report.gee == doctest::Approx(oracle).epsilon(5e-3));
    }
}

TEST_CASE("budget-limited regime at 2 dB") {
    const auto cfg = table1_at(2.0, 21);
    const auto ch = generate_channels(cfg);
    const Solution sol = run_sca(ch, cfg);
    REQUIRE(sol.ok());
    CHECK(sol.report.p_tr == doctest::Approx(3.1698).epsilon(0.01));
}

TEST_CASE("option overrides") {
    const auto cfg = table1_at(10.0, 2);
    const auto ch = generate_channels(cfg);
    AlgorithmOptions opts;
    opts.max_iterations = 1;
    const Solution one = run_sca(ch, cfg, opts);
    CHECK(one.iterations_used == 1);
    CHECK(one.status == SolveStatus::iteration_limit);
}

}
