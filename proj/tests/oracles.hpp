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

// Brute-force reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library's solvers.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "beamqubo/graph.hpp"
#include "beamqubo/qubo.hpp"

namespace oracle {

using beamqubo::ProximityGraph;
using beamqubo::Vertex;

inline ProximityGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    ProximityGraph g(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) {
            if (u(rng) < p) g.add_edge(i, j);
        }
    }
    return g;
}

inline bool group_ok(const ProximityGraph& g, const std::vector<Vertex>& group, std::size_t w) {
    if (group.size() > w) return false;
    for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
            if (!g.adjacent(group[a], group[b])) return false;
        }
    }
    return true;
}

/// Fewest groups in a partition of all vertices into cliques of size <= w,
/// using at most `beams` groups. Enumerates restricted growth strings.
inline std::optional<std::size_t> min_clique_cover(const ProximityGraph& g, std::size_t w,
                                                   std::size_t beams) {
    const std::size_t n = g.num_vertices();
    if (n == 0) return 0;
    std::optional<std::size_t> best;
    std::vector<std::vector<Vertex>> groups;
    std::function<void(Vertex)> rec = [&](Vertex v) {
        if (best && groups.size() >= *best) return;
        if (v == n) {
            best = groups.size();
            return;
        }
        // Index loop: the recursion may grow `groups` and move its storage.
        for (std::size_t k = 0; k < groups.size(); ++k) {
            groups[k].push_back(v);
            if (group_ok(g, groups[k], w)) rec(v + 1);
            groups[k].pop_back();
        }
        if (groups.size() < beams) {
            groups.push_back({v});
            rec(v + 1);
            groups.pop_back();
        }
    };
    rec(0);
    return best;
}

/// Fewest additional groups when `pinned[k]` already owns group k: every
/// other vertex joins a pinned group or a new one, groups are cliques of size
/// <= w, and the total stays within `beams`.
inline std::optional<std::size_t> min_extra_groups(const ProximityGraph& g, std::size_t w,
                                                   std::size_t beams,
                                                   const std::vector<Vertex>& pinned) {
    const std::size_t n = g.num_vertices();
    std::vector<bool> is_pinned(n, false);
    std::vector<std::vector<Vertex>> groups;
    for (Vertex p : pinned) {
        is_pinned[p] = true;
        groups.push_back({p});
    }
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v) {
        if (!is_pinned[v]) rest.push_back(v);
    }
    const std::size_t k = pinned.size();
    if (k > beams) return std::nullopt;
    std::optional<std::size_t> best;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (best && groups.size() - k >= *best) return;
        if (idx == rest.size()) {
            best = groups.size() - k;
            return;
        }
        const Vertex v = rest[idx];
        for (std::size_t k = 0; k < groups.size(); ++k) {
            groups[k].push_back(v);
            if (group_ok(g, groups[k], w)) rec(idx + 1);
            groups[k].pop_back();
        }
        if (groups.size() < beams) {
            groups.push_back({v});
            rec(idx + 1);
            groups.pop_back();
        }
    };
    rec(0);
    return best;
}

/// Independent restatement of the placement rules on a user -> beam map.
/// Returns the number of distinct beams used, or nullopt when any rule fails.
inline std::optional<std::size_t> check_assignment(const ProximityGraph& g,
                                                   const std::vector<std::optional<std::size_t>>& beam_of,
                                                   std::size_t w, std::size_t beams) {
    std::vector<std::vector<Vertex>> groups(beams);
    for (Vertex v = 0; v < beam_of.size(); ++v) {
        if (!beam_of[v] || *beam_of[v] >= beams) return std::nullopt;
        groups[*beam_of[v]].push_back(v);
    }
    std::size_t used = 0;
    for (const auto& grp : groups) {
        if (grp.empty()) continue;
        if (!group_ok(g, grp, w)) return std::nullopt;
        ++used;
    }
    return used;
}

/// x^T Q x + offset straight from the dense matrix.
inline double dense_energy(const beamqubo::QuboMatrix& q, const std::vector<std::uint8_t>& x) {
    const auto d = q.dense();
    const std::size_t n = q.size();
    double e = q.offset();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) e += d[i * n + j] * x[i] * x[j];
    }
    return e;
}

/// Lowest energy by plain enumeration, no incremental tricks.
inline double brute_min_energy(const beamqubo::QuboMatrix& q) {
    const std::size_t n = q.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> x(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        for (std::size_t i = 0; i < n; ++i) x[i] = (m >> i) & 1u;
        best = std::min(best, q.energy(x));
    }
    return best;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t m, std::size_t n) {
    std::vector<std::uint8_t> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (m >> i) & 1u;
    return x;
}

}  // namespace oracle
