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
#include "nomagee/conic.hpp"

using namespace nomagee::conic;

TEST_SUITE("conic") {

TEST_CASE("variables") {
    Program p;
    const auto a = p.add_variable("alpha");
    CHECK(a.dim == 1);
    const auto w = p.add_variable("w_1", 6);
    CHECK(w.dim == 6);
    CHECK(w.offset == 1);
    CHECK(p.num_variables() == 7);
    CHECK_THROWS_AS(p.add_variable("alpha"), std::invalid_argument);
    CHECK_THROWS_AS(p.add_variable("empty", 0), std::invalid_argument);
    CHECK_THROWS_AS(w[6], std::out_of_range);
}

TEST_CASE("expressions") {
    Expr e = Expr::term(0, 2.0) + Expr::term(1) - Expr::term(0, 2.0) + 3.0;
    e.normalize();
    CHECK(e.terms().size() == 1);
    CHECK(e.terms()[0].first == 1);
    CHECK(e.constant() == 3.0);
    const std::vector<double> x{5.0, 7.0};
    CHECK(e.evaluate(x) == 10.0);
    CHECK((2.0 * e / 4.0).evaluate(x) == 5.0);
}

TEST_CASE("second-order cones") {
    SUBCASE("fixed vector norm") {
        Program p;
        const auto t = p.add_variable("t");
        p.add_soc(t.scalar(), {Expr(3.0), Expr(4.0)});
        p.minimize(t.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(5.0).epsilon(1e-7));
    }
    SUBCASE("one free coordinate") {
        Program p;
        const auto t = p.add_variable("t");
        const auto x = p.add_variable("x");
        p.add_soc(t.scalar(), {x.scalar(), Expr(1.0)});
        p.add_ge(x.scalar(), Expr(2.0));
        p.minimize(t.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
        CHECK(r.value(x.scalar()) == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("right-hand side forced negative") {
        Program p;
        const auto x = p.add_variable("x");
        p.add_soc(x.scalar(), {Expr(1.0)});
        p.add_le(x.scalar(), Expr(-1.0));
        p.minimize(x.scalar());
        CHECK(solve(p).status == Status::infeasible);
        Program q;
        q.add_variable("x");
        CHECK_THROWS_AS(q.add_soc(Expr(-1.0), {Expr(1.0)}), std::invalid_argument);
    }
    SUBCASE("rotated cone") {
        // max u s.t. u^2 <= a b, a = 2, b = 8
        Program p;
        const auto u = p.add_variable("u");
        p.add_rotated_soc(Expr(2.0), Expr(8.0), {u.scalar()});
        p.maximize(u.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(4.0).epsilon(1e-7));
    }
}

TEST_CASE("exponential bounds") {
    SUBCASE("z >= 2^1") {
        Program p;
        const auto z = p.add_variable("z");
        p.add_exp_bound(z.scalar(), Expr(1.0));
        p.minimize(z.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-7));
    }
    SUBCASE("z >= 2^0") {
        Program p;
        const auto z = p.add_variable("z");
        p.add_exp_bound(z.scalar(), Expr(0.0));
        p.minimize(z.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("2^q <= 8") {
        Program p;
        const auto q = p.add_variable("q");
        p.add_exp_bound(Expr(8.0), q.scalar());
        p.maximize(q.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(3.0).epsilon(1e-7));
    }
}

TEST_CASE("semidefinite constraints") {
    SUBCASE("1x1") {
        Program p;
        const auto x = p.add_variable("x");
        p.add_psd({{x.scalar()}});
        p.minimize(x.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(std::abs(r.objective_value) < 1e-7);
    }
    SUBCASE("diag(x, 1 - x) is feasible exactly on [0, 1]") {
        for (int sense = 0; sense < 2; ++sense) {
            Program p;
            const auto x = p.add_variable("x");
            p.add_psd({{x.scalar(), Expr(0.0)}, {Expr(0.0), 1.0 - x.scalar()}});
            p.set_objective(sense ? Sense::maximize : Sense::minimize, x.scalar());
            const auto r = solve(p);
            REQUIRE(r.optimal());
            CHECK(r.objective_value == doctest::Approx(sense ? 1.0 : 0.0).epsilon(1e-7));
        }
        Program q;
        const auto x = q.add_variable("x");
        q.add_psd({{x.scalar(), Expr(0.0)}, {Expr(0.0), 1.0 - x.scalar()}});
        q.add_ge(x.scalar(), Expr(1.5));
        q.minimize(x.scalar());
        CHECK(solve(q).status == Status::infeasible);
    }
    SUBCASE("[[1, y], [y, 1]]") {
        Program p;
        const auto y = p.add_variable("y");
        p.add_psd({{Expr(1.0), y.scalar()}, {y.scalar(), Expr(1.0)}});
        p.maximize(y.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("malformed matrices") {
        Program p;
        const auto y = p.add_variable("y");
        CHECK_THROWS_AS(p.add_psd({}), std::invalid_argument);
        CHECK_THROWS_AS(p.add_psd({{y.scalar(), Expr(1.0)}, {Expr(0.0), Expr(1.0)}}), std::invalid_argument);
        CHECK_THROWS_AS(p.add_psd({{y.scalar(), Expr(1.0)}}), std::invalid_argument);
    }
}

TEST_CASE("solve statuses") {
    SUBCASE("empty problem") {
        Program p;
        p.add_variable("x");
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == 0.0);
    }
    SUBCASE("bounded linear") {
        Program p;
        const auto x = p.add_variable("x");
        p.add_le(x.scalar(), Expr(1.0));
        p.maximize(x.scalar());
        const auto r = solve(p);
        REQUIRE(r.optimal());
        CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("unbounded") {
        Program p;
        const auto x = p.add_variable("x");
        p.maximize(x.scalar());
        CHECK(solve(p).status == Status::unbounded);
    }
    SUBCASE("values need an optimal status") {
        Program p;
        const auto x = p.add_variable("x");
        p.maximize(x.scalar());
        const auto r = solve(p);
        CHECK_THROWS_AS(r.value(x.scalar()), std::logic_error);
    }
    SUBCASE("infeasible linear system") {
        Program p;
        const auto x = p.add_variable("x");
        p.add_ge(x.scalar(), Expr(2.0));
        p.add_le(x.scalar(), Expr(1.0));
        p.minimize(x.scalar());
        CHECK(solve(p).status == Status::infeasible);
    }
}

TEST_CASE("backends and capabilities") {
    CHECK(default_backend().name() == "barrier");
    CHECK_THROWS_AS(make_backend("gurobi"), std::invalid_argument);
    const auto socp = make_backend("barrier-socp");
    CHECK(socp->supports(ConeKind::soc));
    CHECK_FALSE(socp->supports(ConeKind::psd));
    Program p;
    const auto z = p.add_variable("z");
    p.add_exp_bound(z.scalar(), Expr(1.0));
    p.minimize(z.scalar());
    CHECK_THROWS_AS(socp->solve(p), CapabilityError);
    CHECK(p.uses(ConeKind::exp2));
    CHECK(p.num_constraints(ConeKind::exp2) == 1);
    CHECK(p.num_constraints(ConeKind::soc) == 0);
}

TEST_CASE("warm start and violation accounting") {
    Program p;
    const auto x = p.add_variable("x", 2);
    p.add_soc(Expr(1.0), {x[0], x[1]});
    p.maximize(x[0] + x[1]);
    CHECK_THROWS_AS(p.set_initial_point({1.0}), std::invalid_argument);
    p.set_initial_point({5.0, 5.0});
    const std::vector<double> out{3.0, 4.0};
    CHECK(p.max_violation(out) == doctest::Approx(4.0));
    const auto r = solve(p);
    REQUIRE(r.optimal());
    CHECK(r.objective_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
    CHECK(p.dump().find("x") != std::string::npos);
}

}
