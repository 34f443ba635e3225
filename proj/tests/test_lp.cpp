// Copyright 2026 The beamqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <cmath>
#include <random>

#include "beamqubo/errors.hpp"
#include "beamqubo/lp.hpp"
#include "doctest.h"

using namespace beamqubo;

TEST_CASE("single bounded variable") {
    LinearProgram lp;
    const auto x = lp.add_variable(1.0);
    lp.add_row({{x, 1.0}}, Relation::GreaterEqual, 0.3);
    const auto s = lp_solve(lp);
    CHECK(s.values[x] == doctest::Approx(0.3));
    CHECK(s.objective == doctest::Approx(0.3));
    CHECK(s.max_residual <= 1e-7);
}

TEST_CASE("two-variable vertex optimum") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (1.6, 1.2)
    LinearProgram lp;
    const double inf = std::numeric_limits<double>::infinity();
    const auto x = lp.add_variable(-1.0, 0.0, inf);
    const auto y = lp.add_variable(-1.0, 0.0, inf);
    lp.add_row({{x, 1.0}, {y, 2.0}}, Relation::LessEqual, 4.0);
    lp.add_row({{x, 3.0}, {y, 1.0}}, Relation::LessEqual, 6.0);
    const auto s = lp_solve(lp);
    CHECK(s.values[x] == doctest::Approx(1.6));
    CHECK(s.values[y] == doctest::Approx(1.2));
    CHECK(s.objective == doctest::Approx(-2.8));
}

TEST_CASE("equality row with upper bounds and offset") {
    // min x + 2y + 10 s.t. x + y = 1.5, x, y in [0, 1] -> x = 1, y = 0.5
    LinearProgram lp;
    const auto x = lp.add_variable(1.0);
    const auto y = lp.add_variable(2.0);
    lp.offset = 10.0;
    lp.add_row({{x, 1.0}, {y, 1.0}}, Relation::Equal, 1.5);
    const auto s = lp_solve(lp);
    CHECK(s.values[x] == doctest::Approx(1.0));
    CHECK(s.values[y] == doctest::Approx(0.5));
    CHECK(s.objective == doctest::Approx(12.0));
}

TEST_CASE("non-zero lower bounds and negative right-hand sides") {
    // min -x s.t. -x >= -2.5, x in [1, 4] -> x = 2.5
    LinearProgram lp;
    const auto x = lp.add_variable(-1.0, 1.0, 4.0);
    lp.add_row({{x, -1.0}}, Relation::GreaterEqual, -2.5);
    const auto s = lp_solve(lp);
    CHECK(s.values[x] == doctest::Approx(2.5));
}

TEST_CASE("degenerate textbook cycling example terminates") {
    // Beale's example; optimum -5/4 at x4 = x6 = 1
    LinearProgram lp;
    const double inf = std::numeric_limits<double>::infinity();
    const auto x4 = lp.add_variable(-0.75, 0.0, inf);
    const auto x5 = lp.add_variable(20.0, 0.0, inf);
    const auto x6 = lp.add_variable(-0.5, 0.0, inf);
    const auto x7 = lp.add_variable(6.0, 0.0, inf);
    lp.add_row({{x4, 0.25}, {x5, -8.0}, {x6, -1.0}, {x7, 9.0}}, Relation::LessEqual, 0.0);
    lp.add_row({{x4, 0.5}, {x5, -12.0}, {x6, -0.5}, {x7, 3.0}}, Relation::LessEqual, 0.0);
    lp.add_row({{x6, 1.0}}, Relation::LessEqual, 1.0);
    const auto s = lp_solve(lp);
    CHECK(s.objective == doctest::Approx(-1.25));
    CHECK(s.max_residual <= 1e-7);
}

TEST_CASE("infeasible LP names a row") {
    LinearProgram lp;
    const auto x = lp.add_variable(1.0);
    const auto y = lp.add_variable(1.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, Relation::LessEqual, 0.5);
    lp.add_row({{x, 1.0}, {y, 1.0}}, Relation::GreaterEqual, 1.0);
    try {
        lp_solve(lp);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(std::string(e.what()).find("row") != std::string::npos);
    }
}

TEST_CASE("unbounded, malformed and over-budget LPs") {
    LinearProgram unb;
    unb.add_variable(-1.0, 0.0, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(lp_solve(unb), ValidationError);

    LinearProgram bad;
    bad.add_variable(1.0, 1.0, 0.0);
    CHECK_THROWS_AS(lp_solve(bad), ValidationError);

    LinearProgram ref;
    ref.add_variable(1.0);
    ref.add_row({{3, 1.0}}, Relation::LessEqual, 1.0);
    CHECK_THROWS_AS(lp_solve(ref), ValidationError);

    LinearProgram big;
    for (int k = 0; k < 10; ++k) big.add_variable(-1.0 - k);
    for (int r = 0; r < 10; ++r) {
        std::vector<std::pair<std::size_t, double>> t;
        for (int k = 0; k < 10; ++k) t.emplace_back(k, 1.0 + (r * k) % 3);
        big.add_row(t, Relation::LessEqual, 3.0);
    }
    LpOptions one;
    one.max_iterations = 1;
    CHECK_THROWS_AS(lp_solve(big, one), ResourceError);
}

TEST_CASE("random covering LPs: feasible and no better than any sampled feasible point") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 6, m = 1 + rng() % 6;
        LinearProgram lp;
        for (std::size_t j = 0; j < n; ++j) lp.add_variable(u(rng));
        for (std::size_t r = 0; r < m; ++r) {
            std::vector<std::pair<std::size_t, double>> terms;
            for (std::size_t j = 0; j < n; ++j) {
                if (u(rng) < 0.6) terms.emplace_back(j, 1.0);
            }
            if (terms.empty()) terms.emplace_back(0, 1.0);
            const auto rel = u(rng) < 0.5 ? Relation::GreaterEqual : Relation::LessEqual;
            lp.add_row(terms, rel, rel == Relation::GreaterEqual ? 1.0 : 2.0);
        }
        const auto s = lp_solve(lp);
        CHECK(s.max_residual <= 1e-7);
        CHECK(lp_residual(lp, s.values) <= 1e-7);
        // the all-ones point is feasible here; sampled feasible points cost at least the optimum
        for (int k = 0; k < 200; ++k) {
            std::vector<double> x(n);
            for (auto& v : x) v = u(rng) < 0.5 ? 1.0 : u(rng);
            if (lp_residual(lp, x) > 0.0) continue;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) c += lp.cost[j] * x[j];
            CHECK(c >= s.objective - 1e-9);
        }
    }
}
