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

#include <random>
#include <sstream>

#include "beamqubo/errors.hpp"
#include "beamqubo/graph.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beamqubo;

namespace {

ProximityGraph complete(std::size_t n) {
    ProximityGraph g(n);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
    }
    return g;
}

}  // namespace

TEST_CASE("graph structure") {
    ProximityGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(2, 1);
    CHECK(g.num_edges() == 2);
    CHECK(g.adjacent(1, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.neighbors(1) == std::vector<Vertex>{0, 2});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(g.add_edge(3, 3), ValidationError);
    CHECK_THROWS_AS(g.add_edge(0, 4), ValidationError);
    auto c = g.complement();
    CHECK(c.num_edges() == 6 - 2);
    CHECK_FALSE(c.adjacent(0, 1));
    CHECK(c.adjacent(0, 3));
}

TEST_CASE("greedy independent set examples") {
    CHECK(greedy_independent_set(ProximityGraph(5)).size() == 5);
    CHECK(greedy_independent_set(complete(4)).size() == 1);
    ProximityGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    auto s = greedy_independent_set(path);
    std::sort(s.begin(), s.end());
    CHECK(s == std::vector<Vertex>{0, 2});
}

TEST_CASE("greedy independent set follows residual minimum degree") {
    // star centre 0 with leaves 1..3, plus 3-4; residual degrees decide the order
    ProximityGraph g(5);
    for (Vertex v : {1, 2, 3}) g.add_edge(0, v);
    g.add_edge(3, 4);
    // degrees 0:3 1:1 2:1 3:2 4:1 -> pick 1 (drops 0); residual 2:0 3:1 4:1 -> pick 2;
    // then 3 and 4 tie at degree 1 -> pick 3 (drops 4)
    CHECK(greedy_independent_set(g) == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("predicates") {
    ProximityGraph g(3);
    g.add_edge(0, 1);
    CHECK(is_independent(g, std::vector<Vertex>{}));
    CHECK(is_independent(g, std::vector<Vertex>{2}));
    CHECK_FALSE(is_independent(g, std::vector<Vertex>{0, 1}));
    CHECK(is_clique(g, std::vector<Vertex>{}));
    CHECK(is_clique(g, std::vector<Vertex>{1}));
    CHECK(is_clique(g, std::vector<Vertex>{0, 1}));
    CHECK_FALSE(is_clique(g, std::vector<Vertex>{0, 2}));
    CHECK_THROWS_AS(is_independent(g, std::vector<Vertex>{5}), ValidationError);
    CHECK_THROWS_AS(is_clique(g, std::vector<Vertex>{5}), ValidationError);
}

TEST_CASE("random graphs: independence, clique/complement duality") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 12;
        auto g = oracle::random_graph(n, 0.1 + 0.8 * (rng() % 100) / 100.0, rng);
        auto s = greedy_independent_set(g);
        CHECK(!s.empty());
        CHECK(is_independent(g, s));
        // maximality: every vertex outside s has a neighbour in s
        for (Vertex v = 0; v < n; ++v) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            bool hit = false;
            for (Vertex u : s) hit = hit || g.adjacent(u, v);
            CHECK(hit);
        }
        const auto c = g.complement();
        for (int k = 0; k < 20; ++k) {
            std::vector<Vertex> sub;
            for (Vertex v = 0; v < n; ++v) {
                if (rng() % 3 == 0) sub.push_back(v);
            }
            CHECK(is_clique(g, sub) == is_independent(c, sub));
        }
    }
}

TEST_CASE("edge list round trip and errors") {
    ProximityGraph g(4);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    std::stringstream ss;
    write_edge_list(ss, g);
    CHECK(read_edge_list(ss) == g);

    std::stringstream commented("# header\n3\n\n0 1\n# note\n1 2\n");
    auto h = read_edge_list(commented);
    CHECK(h.num_vertices() == 3);
    CHECK(h.num_edges() == 2);

    std::stringstream bad1("3\n0 3\n");
    CHECK_THROWS(read_edge_list(bad1));
    std::stringstream bad2("3\n0 x\n");
    CHECK_THROWS_AS(read_edge_list(bad2), FormatError);
    std::stringstream bad3("");
    CHECK_THROWS_AS(read_edge_list(bad3), FormatError);
}
