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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamqubo/graph.hpp"

namespace beamqubo {

using Bit = std::uint8_t;
using Bitstring = std::vector<Bit>;

/// Beam placement instance: proximity graph, beam budget B and per-beam
/// capacity W.
struct ProblemInstance {
    ProximityGraph graph;
    std::size_t beams = 0;
    std::size_t capacity = 0;

    std::size_t users() const noexcept { return graph.num_vertices(); }
    void validate() const;
};

/// N*B + B + W*B
std::size_t qubit_count(std::size_t users, std::size_t beams, std::size_t capacity);

/// Flat index map for x = [a_1..a_B, z_1..z_B, s_1..s_B].
///
/// The assignment block is grouped by beam and then by user; the slack block
/// is grouped by beam and then by weight w = 1..W. All indices are 0-based
/// except the slack weight, which is the integer coefficient it carries.
class VariableLayout {
 public:
    enum class Kind { Assignment, Activation, Slack };
    struct Variable {
        Kind kind;
        std::size_t user = 0;    // Assignment only
        std::size_t beam = 0;
        std::size_t weight = 0;  // Slack only, 1..W
    };

    VariableLayout() = default;
    VariableLayout(std::size_t users, std::size_t beams, std::size_t capacity);

    std::size_t users() const noexcept { return n_; }
    std::size_t beams() const noexcept { return b_; }
    std::size_t capacity() const noexcept { return w_; }
    std::size_t size() const noexcept { return n_ * b_ + b_ + w_ * b_; }

    std::size_t a_index(std::size_t user, std::size_t beam) const { return beam * n_ + user; }
    std::size_t z_index(std::size_t beam) const { return n_ * b_ + beam; }
    std::size_t s_index(std::size_t beam, std::size_t weight) const {
        return n_ * b_ + b_ + beam * w_ + (weight - 1);
    }

    /// Inverse of the index functions.
    Variable describe(std::size_t index) const;

    friend bool operator==(const VariableLayout&, const VariableLayout&) = default;

 private:
    std::size_t n_ = 0, b_ = 0, w_ = 0;
};

struct QuboTerm {
    std::size_t row;
    std::size_t col;
    double value;

    friend bool operator==(const QuboTerm&, const QuboTerm&) = default;
};

/// Upper-triangular QUBO with a constant offset:
/// energy(x) = offset + sum_{i <= j} Q_ij x_i x_j.
///
/// Terms are sorted by (row, col), unique and non-zero. Values are immutable
/// once built; use QuboBuilder to assemble one.
class QuboMatrix {
 public:
    QuboMatrix() = default;

    std::size_t size() const noexcept { return size_; }
    double offset() const noexcept { return offset_; }
    std::span<const QuboTerm> terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }

    /// Coefficient Q_ij with the pair normalised to row <= col.
    double coefficient(std::size_t i, std::size_t j) const;

    /// Largest |Q_ij| over stored terms, 0 for an empty matrix.
    double max_abs_coefficient() const;

    /// Throws ValidationError when x.size() != size().
    double energy(std::span<const Bit> x) const;

    /// Dense row-major size x size copy, for small oracles.
    std::vector<double> dense() const;

    friend bool operator==(const QuboMatrix&, const QuboMatrix&) = default;

 private:
    friend class QuboBuilder;
    std::size_t size_ = 0;
    double offset_ = 0.0;
    std::vector<QuboTerm> terms_;
};

/// Receiver for QUBO terms. add_term() accepts either orientation; the lower
/// triangle is folded onto the upper one (Q_ij += Q_ji).
class TermSink {
 public:
    virtual ~TermSink() = default;
    virtual void add_term(std::size_t i, std::size_t j, double value) = 0;
    virtual void add_offset(double value) = 0;
};

class QuboBuilder final : public TermSink {
 public:
    explicit QuboBuilder(std::size_t size) : size_(size) {}

    void add_term(std::size_t i, std::size_t j, double value) override;
    void add_offset(double value) override { offset_ += value; }

    std::size_t size() const noexcept { return size_; }

    /// Sorts, merges duplicates and drops exact zeros.
    QuboMatrix build() &&;

 private:
    std::size_t size_;
    double offset_ = 0.0;
    std::vector<QuboTerm> pending_;
};

struct QuboOptions {
    /// Penalty weight; unset means B + 1.
    std::optional<double> lambda;
    /// Per-beam switch for the capacity penalty. Empty means every beam.
    std::vector<bool> capacity_penalty;
    /// Refuse to build when the variable count exceeds this.
    std::size_t max_variables = 1u << 20;
};

double default_lambda(const ProblemInstance& inst);

/// Streams every term of Q = Q_o + lambda (Q_C1 + Q_C2 + Q_C3 + Q_C4) into
/// `sink`, including the constant offsets of the squared penalties, so that
/// a feasible x has energy equal to its number of active beams.
void emit_qubo_terms(const ProblemInstance& inst, const VariableLayout& layout,
                     const QuboOptions& opts, TermSink& sink);

struct BuiltQubo {
    QuboMatrix qubo;
    VariableLayout layout;
};

BuiltQubo build_qubo(const ProblemInstance& inst, const QuboOptions& opts = {});

// ---------------------------------------------------------------------------
// Ising form

struct Coupler {
    std::size_t i;
    std::size_t j;
    double strength;
};

/// H(s) = offset + sum_i f_i s_i + sum_{i<j} G_ij s_i s_j over s in {-1, +1}.
struct IsingModel {
    std::vector<double> biases;
    std::vector<Coupler> couplers;  // i < j, sorted
    double offset = 0.0;

    double energy(std::span<const int> spins) const;
};

/// Substitutes x = (s + 1) / 2, giving f_i = Q_ii/2 + (sum_{j != i} Q_ij + Q_ji)/4
/// and G_ij = Q_ij/4; the constant is folded into the offset.
IsingModel qubo_to_ising(const QuboMatrix& q);

/// s_i = 2 x_i - 1
std::vector<int> to_spins(std::span<const Bit> x);

// ---------------------------------------------------------------------------
// Decoding and feasibility

enum class Constraint { C1, C2, C3, C4 };

/// One violated constraint instance. Unused index fields are zero.
struct Violation {
    Constraint constraint;
    std::size_t user = 0;
    std::size_t other = 0;  // C3: second user
    std::size_t beam = 0;

    std::string to_string() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string constraint_name(Constraint c);

/// Decoded user-to-beam assignment.
struct BeamSolution {
    std::size_t users = 0;
    std::size_t beams = 0;
    std::vector<Bit> assignment;  // users x beams, row-major by user
    std::vector<Bit> active;      // per beam
    std::size_t objective = 0;
    std::vector<Violation> violations;

    BeamSolution() = default;
    BeamSolution(std::size_t n_users, std::size_t n_beams);

    Bit a(std::size_t user, std::size_t beam) const { return assignment[user * beams + beam]; }
    void set_a(std::size_t user, std::size_t beam, Bit v) { assignment[user * beams + beam] = v; }

    bool feasible() const noexcept { return violations.empty(); }
    /// Beam of `user` when assigned to exactly one beam.
    std::optional<std::size_t> beam_of(std::size_t user) const;
    /// Recomputes objective from `active`.
    void refresh_objective();
};

/// Every violated instance of C1..C4 in a fixed order: C1 by user, C2 by
/// (user, beam), C3 by (beam, user, other), C4 by beam.
std::vector<Violation> check_feasibility(const BeamSolution& sol, const ProblemInstance& inst);

/// Reads the assignment and activation blocks of x and checks feasibility.
BeamSolution decode(std::span<const Bit> x, const VariableLayout& layout,
                    const ProblemInstance& inst);

/// Inverse of decode for feasible solutions: slack set to make every
/// capacity row exact.
Bitstring encode(const BeamSolution& sol, const VariableLayout& layout);

// ---------------------------------------------------------------------------
// Conditioning

/// A QUBO restricted to its free variables, plus the way back.
struct ConditionedQubo {
    QuboMatrix qubo;
    /// free index -> original index, ascending.
    std::vector<std::size_t> free_to_full;
};

/// Eliminates fixed variables exactly: free/fixed-to-one cross terms fold
/// into the free variable's diagonal, fixed/fixed terms fold into the offset,
/// anything touching a variable fixed to zero disappears.
ConditionedQubo condition(const QuboMatrix& q, const std::map<std::size_t, Bit>& fixed);

/// Rebuilds the full-length bitstring from fixed values and a free sample.
Bitstring merge_fixed(std::size_t full_size, const std::map<std::size_t, Bit>& fixed,
                      std::span<const std::size_t> free_to_full, std::span<const Bit> free_bits);

/// Sink adaptor that conditions terms on the fly. `fixed` holds 0 or 1 for
/// fixed variables and kFree for free ones.
class ConditioningSink final : public TermSink {
 public:
    static constexpr std::uint8_t kFree = 0xff;

    explicit ConditioningSink(std::vector<std::uint8_t> fixed);

    void add_term(std::size_t i, std::size_t j, double value) override;
    void add_offset(double value) override { builder_.add_offset(value); }

    const std::vector<std::size_t>& free_to_full() const noexcept { return free_to_full_; }
    ConditionedQubo finish() &&;

 private:
    std::vector<std::uint8_t> fixed_;
    std::vector<std::size_t> full_to_free_;
    std::vector<std::size_t> free_to_full_;
    QuboBuilder builder_;
};

// ---------------------------------------------------------------------------
// QUBO text file: header "S offset", then "i j value" per line, 0-indexed,
// upper triangular.

void write_qubo(std::ostream& out, const QuboMatrix& q);
QuboMatrix read_qubo(std::istream& in);

}  // namespace beamqubo
