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

#include "beamqubo/graph.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "beamqubo/errors.hpp"

namespace beamqubo {

ProximityGraph::ProximityGraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

void ProximityGraph::check_vertex(Vertex v) const {
    if (v >= n_) {
        throw ValidationError("vertex " + std::to_string(v) + " out of range for graph with " +
                              std::to_string(n_) + " vertices");
    }
}

void ProximityGraph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
    if (adj_[u * n_ + v]) return;
    adj_[u * n_ + v] = 1;
    adj_[v * n_ + u] = 1;
    ++num_edges_;
}

bool ProximityGraph::adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[u * n_ + v] != 0;
}

std::size_t ProximityGraph::degree(Vertex v) const {
    check_vertex(v);
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_; ++j) d += adj_[v * n_ + j];
    return d;
}

std::vector<Vertex> ProximityGraph::neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (std::size_t j = 0; j < n_; ++j) {
        if (adj_[v * n_ + j]) out.push_back(j);
    }
    return out;
}

std::vector<Edge> ProximityGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (adj_[i * n_ + j]) out.emplace_back(i, j);
        }
    }
    return out;
}

ProximityGraph ProximityGraph::complement() const {
    ProximityGraph c(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (!adj_[i * n_ + j]) c.add_edge(i, j);
        }
    }
    return c;
}

std::vector<Vertex> greedy_independent_set(const ProximityGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);

    auto remove = [&](Vertex v) {
        alive[v] = false;
        for (std::size_t u = 0; u < n; ++u) {
            if (alive[u] && g.adjacent(u, v)) --deg[u];
        }
    };

    std::vector<Vertex> chosen;
    std::size_t remaining = n;
    while (remaining > 0) {
        Vertex best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (alive[v] && (best == n || deg[v] < deg[best])) best = v;
        }
        chosen.push_back(best);
        std::vector<Vertex> doomed{best};
        for (std::size_t u = 0; u < n; ++u) {
            if (alive[u] && g.adjacent(best, u)) doomed.push_back(u);
        }
        for (Vertex v : doomed) remove(v);
        remaining -= doomed.size();
    }
    return chosen;
}

bool is_independent(const ProximityGraph& g, std::span<const Vertex> s) {
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] != s[b] && g.adjacent(s[a], s[b])) return false;
        }
    }
    // adjacent() validates pairs; singletons still need a range check
    for (Vertex v : s) (void)g.degree(v);
    return true;
}

bool is_clique(const ProximityGraph& g, std::span<const Vertex> s) {
    for (Vertex v : s) (void)g.degree(v);
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) {
            if (s[a] != s[b] && !g.adjacent(s[a], s[b])) return false;
        }
    }
    return true;
}

namespace {

bool skippable(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

ProximityGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    long long n = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream ss(line);
        if (!(ss >> n) || n < 0) {
            throw FormatError("edge list line " + std::to_string(line_no) +
                              ": expected vertex count");
        }
        break;
    }
    if (n < 0) throw FormatError("edge list is empty");

    ProximityGraph g(static_cast<std::size_t>(n));
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        std::istringstream ss(line);
        long long i = -1, j = -1;
        std::string rest;
        if (!(ss >> i >> j) || (ss >> rest) || i < 0 || j < 0) {
            throw FormatError("edge list line " + std::to_string(line_no) + ": expected 'i j'");
        }
        try {
            g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        } catch (const ValidationError& e) {
            throw FormatError("edge list line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return g;
}

void write_edge_list(std::ostream& out, const ProximityGraph& g) {
    out << g.num_vertices() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace beamqubo
