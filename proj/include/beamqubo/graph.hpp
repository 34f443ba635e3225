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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace beamqubo {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph over vertices 0..n-1 with a dense adjacency relation.
///
/// The relation is kept symmetric and irreflexive by construction; there is
/// no way to insert a self-loop or a one-sided edge.
class ProximityGraph {
 public:
    ProximityGraph() = default;
    explicit ProximityGraph(std::size_t n);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return num_edges_; }

    /// Adds edge {u, v}. Re-adding an existing edge is a no-op.
    /// Throws ValidationError on self-loops or out-of-range vertices.
    void add_edge(Vertex u, Vertex v);

    bool adjacent(Vertex u, Vertex v) const;
    std::size_t degree(Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;

    /// Edge list view with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    /// Graph on the same vertices with exactly the missing (non-loop) pairs.
    ProximityGraph complement() const;

    friend bool operator==(const ProximityGraph&, const ProximityGraph&) = default;

 private:
    void check_vertex(Vertex v) const;

    std::size_t n_ = 0;
    std::size_t num_edges_ = 0;
    std::vector<std::uint8_t> adj_;  // row-major n x n
};

/// Minimum-degree greedy independent set.
///
/// Repeatedly picks the vertex of smallest degree in the residual graph
/// (lowest index on ties), keeps it and deletes it together with its residual
/// neighbours. Returned vertices are in selection order.
std::vector<Vertex> greedy_independent_set(const ProximityGraph& g);

/// True iff no edge of g joins two members of s. Throws ValidationError on
/// out-of-range vertices.
bool is_independent(const ProximityGraph& g, std::span<const Vertex> s);

/// True iff every pair of distinct members of s is adjacent.
bool is_clique(const ProximityGraph& g, std::span<const Vertex> s);

/// Edge-list text format: vertex count on the first line, then one "i j"
/// pair per line. Blank lines and lines starting with '#' are ignored.
ProximityGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const ProximityGraph& g);

}  // namespace beamqubo
