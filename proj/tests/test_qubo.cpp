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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "beamqubo/errors.hpp"
#include "beamqubo/qubo.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beamqubo;

namespace {

ProblemInstance instance(ProximityGraph g, std::size_t beams, std::size_t w) {
    return {std::move(g), beams, w};
}

QuboMatrix random_qubo(std::size_t n, std::mt19937_64& rng, double density = 0.6) {
    std::uniform_real_distribution<double> val(-3.0, 3.0), u(0.0, 1.0);
    QuboBuilder b(n);
    b.add_offset(val(rng));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (u(rng) < density) b.add_term(i, j, val(rng));
        }
    }
    return std::move(b).build();
}

/// Random feasible placement: users in random order join a random compatible
/// group or open a new one.
BeamSolution random_feasible(const ProblemInstance& inst, std::mt19937_64& rng) {
    const std::size_t n = inst.users();
    std::vector<std::vector<Vertex>> groups;
    std::vector<std::optional<std::size_t>> beam_of(n);
    for (Vertex v = 0; v < n; ++v) {
        std::vector<std::size_t> ok;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            auto grp = groups[g];
            grp.push_back(v);
            if (oracle::group_ok(inst.graph, grp, inst.capacity)) ok.push_back(g);
        }
        std::size_t pick = ok.empty() || rng() % 3 == 0 ? groups.size() : ok[rng() % ok.size()];
        if (pick == groups.size()) groups.emplace_back();
        groups[pick].push_back(v);
    }
    // scatter the groups over random distinct beams
    std::vector<std::size_t> beams(inst.beams);
    std::iota(beams.begin(), beams.end(), std::size_t{0});
    std::shuffle(beams.begin(), beams.end(), rng);
    BeamSolution sol(n, inst.beams);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        sol.active[beams[g]] = 1;
        for (Vertex v : groups[g]) sol.set_a(v, beams[g], 1);
    }
    sol.refresh_objective();
    return sol;
}

}  // namespace

TEST_CASE("qubit count") {
    CHECK(qubit_count(12, 12, 5) == 216);
    CHECK(qubit_count(10, 10, 5) == 160);
    CHECK(qubit_count(1, 1, 1) == 3);
}

TEST_CASE("variable layout is a bijection in the documented order") {
    const VariableLayout lay(3, 2, 4);
    CHECK(lay.size() == 3 * 2 + 2 + 4 * 2);
    std::vector<int> hit(lay.size(), 0);
    std::size_t expect = 0;
    for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(lay.a_index(i, b) == expect++);
            ++hit[lay.a_index(i, b)];
        }
    }
    for (std::size_t b = 0; b < 2; ++b) {
        CHECK(lay.z_index(b) == expect++);
        ++hit[lay.z_index(b)];
    }
    for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t w = 1; w <= 4; ++w) {
            CHECK(lay.s_index(b, w) == expect++);
            ++hit[lay.s_index(b, w)];
        }
    }
    for (int h : hit) CHECK(h == 1);
    for (std::size_t k = 0; k < lay.size(); ++k) {
        const auto v = lay.describe(k);
        switch (v.kind) {
            case VariableLayout::Kind::Assignment: CHECK(lay.a_index(v.user, v.beam) == k); break;
            case VariableLayout::Kind::Activation: CHECK(lay.z_index(v.beam) == k); break;
            case VariableLayout::Kind::Slack: CHECK(lay.s_index(v.beam, v.weight) == k); break;
        }
    }
    CHECK_THROWS_AS(lay.describe(lay.size()), ValidationError);
}

TEST_CASE("single user, single beam, unit capacity: hand expansion") {
    const auto inst = instance(ProximityGraph(1), 1, 1);
    const auto [q, lay] = build_qubo(inst);
    // x = [a, z, s], lambda = 2:
    //   z + 2(a - 1)^2 + 2(a - az) + 2(a + s - 1)^2
    CHECK(q.size() == 3);
    CHECK(q.coefficient(0, 0) == doctest::Approx(-2.0));
    CHECK(q.coefficient(1, 1) == doctest::Approx(1.0));
    CHECK(q.coefficient(2, 2) == doctest::Approx(-2.0));
    CHECK(q.coefficient(0, 1) == doctest::Approx(-2.0));
    CHECK(q.coefficient(0, 2) == doctest::Approx(4.0));
    CHECK(q.coefficient(1, 2) == 0.0);
    CHECK(q.offset() == doctest::Approx(4.0));

    double best = 1e9;
    std::uint64_t arg = 0;
    for (std::uint64_t m = 0; m < 8; ++m) {
        const double e = q.energy(oracle::bits_of(m, 3));
        if (e < best - 1e-12) {
            best = e;
            arg = m;
        }
    }
    CHECK(best == doctest::Approx(1.0));
    CHECK(arg == 0b011);
    const auto sol = decode(oracle::bits_of(arg, 3), lay, inst);
    CHECK(sol.feasible());
    CHECK(sol.objective == 1);
}

TEST_CASE("energy examples") {
    ProximityGraph g(2);
    g.add_edge(0, 1);
    const auto inst = instance(g, 1, 2);
    const auto [q, lay] = build_qubo(inst);
    Bitstring zeros(q.size(), 0);
    CHECK(q.energy(zeros) == q.offset());
    Bitstring x(q.size(), 0);
    x[lay.a_index(0, 0)] = x[lay.a_index(1, 0)] = x[lay.z_index(0)] = 1;
    CHECK(q.energy(x) == doctest::Approx(1.0));
    CHECK_THROWS_AS(q.energy(Bitstring(q.size() + 1, 0)), ValidationError);

    QuboBuilder b(1);
    b.add_term(0, 0, 2.5);
    b.add_offset(-1.0);
    const auto one = std::move(b).build();
    CHECK(one.energy(Bitstring{1}) == doctest::Approx(1.5));
}

TEST_CASE("builder folds the lower triangle and drops zeros") {
    QuboBuilder b(3);
    b.add_term(2, 0, 1.0);
    b.add_term(0, 2, 2.0);
    b.add_term(1, 1, 1.0);
    b.add_term(1, 1, -1.0);
    const auto q = std::move(b).build();
    CHECK(q.num_terms() == 1);
    CHECK(q.coefficient(0, 2) == 3.0);
    CHECK(q.coefficient(2, 0) == 3.0);
    QuboBuilder bad(2);
    CHECK_THROWS_AS(bad.add_term(0, 2, 1.0), ValidationError);
    CHECK_THROWS_AS(bad.add_term(0, 1, std::nan("")), ValidationError);
}

TEST_CASE("feasible energy equals beam count") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const std::size_t w = 1 + rng() % 3;
        const auto inst = instance(oracle::random_graph(n, 0.5, rng), n, w);
        const auto [q, lay] = build_qubo(inst);
        const auto sol = random_feasible(inst, rng);
        REQUIRE(check_feasibility(sol, inst).empty());
        const auto x = encode(sol, lay);
        CHECK(q.energy(x) == doctest::Approx(static_cast<double>(sol.objective)));
        CHECK(oracle::dense_energy(q, x) == doctest::Approx(q.energy(x)));
        const auto back = decode(x, lay, inst);
        CHECK(back.assignment == sol.assignment);
        CHECK(back.active == sol.active);
    }
}

TEST_CASE("penalty dominance: global minimum is feasible and optimal") {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 25) {
        const std::size_t n = 1 + rng() % 3;
        const std::size_t w = 1 + rng() % 2;
        const auto inst = instance(oracle::random_graph(n, 0.5, rng), n, w);
        const auto [q, lay] = build_qubo(inst);
        if (q.size() > 20) continue;
        ++checked;
        const auto opt = oracle::min_clique_cover(inst.graph, w, n);
        REQUIRE(opt);
        double best = 1e18;
        double best_infeasible = 1e18;
        Bitstring arg;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << q.size()); ++m) {
            const auto x = oracle::bits_of(m, q.size());
            const double e = q.energy(x);
            if (e < best) {
                best = e;
                arg = x;
            }
            if (!decode(x, lay, inst).feasible()) best_infeasible = std::min(best_infeasible, e);
        }
        const auto sol = decode(arg, lay, inst);
        CHECK(sol.feasible());
        CHECK(sol.objective == *opt);
        CHECK(best == doctest::Approx(static_cast<double>(*opt)));
        CHECK(best_infeasible >= best + 1.0 - 1e-9);
    }
}

TEST_CASE("decode and feasibility examples") {
    ProximityGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    const auto inst = instance(g, 2, 2);
    const VariableLayout lay(3, 2, 2);

    const auto empty = decode(Bitstring(lay.size(), 0), lay, inst);
    CHECK(empty.objective == 0);
    CHECK(empty.violations.size() == 3);
    for (const auto& v : empty.violations) CHECK(v.constraint == Constraint::C1);

    Bitstring x(lay.size(), 0);
    x[lay.a_index(0, 0)] = 1;
    auto sol = decode(x, lay, inst);
    CHECK(std::any_of(sol.violations.begin(), sol.violations.end(),
                      [](const Violation& v) { return v.constraint == Constraint::C2; }));

    // three pairwise adjacent users in a beam of capacity 2
    BeamSolution full(3, 2);
    for (Vertex v = 0; v < 3; ++v) full.set_a(v, 0, 1);
    full.active[0] = 1;
    auto vs = check_feasibility(full, inst);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].constraint == Constraint::C4);
    CHECK(vs[0].to_string() == "C4(beam=0)");

    ProximityGraph apart(2);
    const auto inst2 = instance(apart, 1, 2);
    BeamSolution two(2, 1);
    two.set_a(0, 0, 1);
    two.set_a(1, 0, 1);
    two.active[0] = 1;
    vs = check_feasibility(two, inst2);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].constraint == Constraint::C3);
    CHECK_THROWS_AS(decode(Bitstring(3), lay, inst2), ValidationError);
}

TEST_CASE("check_feasibility agrees with an independent restatement") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng() % 6, nb = 1 + rng() % 4, w = 1 + rng() % 3;
        const auto inst = instance(oracle::random_graph(n, 0.5, rng), nb, w);
        BeamSolution sol(n, nb);
        for (auto& a : sol.assignment) a = rng() % 3 == 0;
        for (auto& z : sol.active) z = rng() % 2;
        std::size_t c1 = 0, c2 = 0, c3 = 0, c4 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t s = 0;
            for (std::size_t b = 0; b < nb; ++b) s += sol.assignment[i * nb + b];
            c1 += s != 1;
        }
        for (std::size_t b = 0; b < nb; ++b) {
            std::size_t load = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const bool in = sol.assignment[i * nb + b];
                load += in;
                c2 += in && !sol.active[b];
                for (std::size_t j = i + 1; j < n; ++j) {
                    c3 += in && sol.assignment[j * nb + b] && !inst.graph.adjacent(i, j);
                }
            }
            c4 += load > w;
        }
        const auto vs = check_feasibility(sol, inst);
        auto count = [&](Constraint c) {
            return static_cast<std::size_t>(std::count_if(
                vs.begin(), vs.end(), [c](const Violation& v) { return v.constraint == c; }));
        };
        CHECK(count(Constraint::C1) == c1);
        CHECK(count(Constraint::C2) == c2);
        CHECK(count(Constraint::C3) == c3);
        CHECK(count(Constraint::C4) == c4);
    }
}

TEST_CASE("ising examples and exhaustive equivalence") {
    QuboBuilder zb(3);
    zb.add_offset(1.25);
    const auto zero = std::move(zb).build();
    const auto iz = qubo_to_ising(zero);
    CHECK(iz.couplers.empty());
    for (double f : iz.biases) CHECK(f == 0.0);
    CHECK(iz.offset == 1.25);

    QuboBuilder ob(1);
    ob.add_term(0, 0, 1.0);
    const auto single = qubo_to_ising(std::move(ob).build());
    CHECK(single.biases[0] == doctest::Approx(0.5));
    CHECK(single.offset == doctest::Approx(0.5));
    CHECK(single.energy(std::vector<int>{-1}) == doctest::Approx(0.0));
    CHECK(single.energy(std::vector<int>{1}) == doctest::Approx(1.0));

    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = t < 10 ? 6 : 1 + rng() % 14;
        const auto q = random_qubo(n, rng);
        const auto m = qubo_to_ising(q);
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
            const auto x = oracle::bits_of(k, n);
            CHECK(std::abs(m.energy(to_spins(x)) - q.energy(x)) < 1e-9);
        }
    }
}

TEST_CASE("conditioning") {
    std::mt19937_64 rng(4);
    const auto q = random_qubo(8, rng, 0.8);

    const auto none = condition(q, {});
    CHECK(none.qubo == q);
    CHECK(none.free_to_full == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});

    std::map<std::size_t, Bit> all;
    for (std::size_t k = 0; k < 8; ++k) all[k] = static_cast<Bit>(rng() % 2);
    const auto fixed_all = condition(q, all);
    CHECK(fixed_all.qubo.size() == 0);
    CHECK(fixed_all.qubo.offset() ==
          doctest::Approx(q.energy(merge_fixed(8, all, {}, {}))).epsilon(1e-12));

    for (int t = 0; t < 20; ++t) {
        std::map<std::size_t, Bit> fx;
        while (fx.size() < 3) fx[rng() % 8] = static_cast<Bit>(rng() % 2);
        const auto c = condition(q, fx);
        REQUIRE(c.qubo.size() == 5);
        for (std::uint64_t m = 0; m < 32; ++m) {
            const auto y = oracle::bits_of(m, 5);
            const auto x = merge_fixed(8, fx, c.free_to_full, y);
            CHECK(std::abs(c.qubo.energy(y) - q.energy(x)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(condition(q, {{9, 1}}), ValidationError);
}

TEST_CASE("conditioning sink matches condition on a built QUBO") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const auto inst = instance(oracle::random_graph(n, 0.5, rng), n, 2);
        const auto built = build_qubo(inst);
        std::vector<std::uint8_t> mask(built.qubo.size(), ConditioningSink::kFree);
        std::map<std::size_t, Bit> fx;
        for (std::size_t k = 0; k < mask.size(); ++k) {
            if (rng() % 2) {
                mask[k] = static_cast<std::uint8_t>(rng() % 2);
                fx[k] = mask[k];
            }
        }
        ConditioningSink sink(mask);
        emit_qubo_terms(inst, built.layout, {}, sink);
        const auto a = std::move(sink).finish();
        const auto b = condition(built.qubo, fx);
        CHECK(a.free_to_full == b.free_to_full);
        REQUIRE(a.qubo.size() == b.qubo.size());
        CHECK(a.qubo.offset() == doctest::Approx(b.qubo.offset()));
        for (std::size_t i = 0; i < a.qubo.size(); ++i) {
            for (std::size_t j = i; j < a.qubo.size(); ++j) {
                CHECK(a.qubo.coefficient(i, j) == doctest::Approx(b.qubo.coefficient(i, j)));
            }
        }
    }
}

TEST_CASE("QUBO file round trip and errors") {
    std::mt19937_64 rng(2);
    const auto q = random_qubo(7, rng);
    std::stringstream ss;
    write_qubo(ss, q);
    CHECK(read_qubo(ss) == q);

    std::stringstream lower("3 0\n2 1 1.0\n");
    CHECK_THROWS_AS(read_qubo(lower), FormatError);
    std::stringstream range("3 0\n0 3 1.0\n");
    CHECK_THROWS_AS(read_qubo(range), FormatError);
    std::stringstream junk("3 0\n0 1\n");
    CHECK_THROWS_AS(read_qubo(junk), FormatError);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_qubo(empty), FormatError);
}

TEST_CASE("build limits and lambda") {
    const auto inst = instance(ProximityGraph(4), 4, 3);
    CHECK(default_lambda(inst) == 5.0);
    QuboOptions small;
    small.max_variables = 10;
    CHECK_THROWS_AS(build_qubo(inst, small), CapacityError);
    QuboOptions neg;
    neg.lambda = -1.0;
    CHECK_THROWS_AS(build_qubo(inst, neg), ValidationError);
    CHECK_THROWS_AS(build_qubo(instance(ProximityGraph(0), 1, 1)), ValidationError);
    CHECK_THROWS_AS(build_qubo(instance(ProximityGraph(2), 0, 1)), ValidationError);
}
