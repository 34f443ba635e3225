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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beamqubo/graph.hpp"
#include "beamqubo/lp.hpp"
#include "beamqubo/qubo.hpp"

namespace beamqubo {

/// Reading tolerance for a_ib = 1 and z_b = 1 in an LP solution.
inline constexpr double kIntegralityTolerance = 1e-6;

struct PresolveOptions {
    /// Let unassigned users join active beams that still have room, in
    /// addition to the new beams.
    bool allow_active_beam_join = false;
    /// Penalty weight for the reduced Hamiltonian; unset means B + 1.
    std::optional<double> lambda;
    /// Annealer capacity: build_reduced_hamiltonian refuses larger problems.
    std::size_t max_free_variables = std::numeric_limits<std::size_t>::max();
    LpOptions lp;
};

/// Outcome of independent-set pre-assignment plus LP rounding.
///
/// Active beams are re-indexed 0..|active|-1; beams at or beyond that index
/// are inactive.
struct PresolveState {
    std::size_t users = 0;
    std::size_t beams = 0;
    std::size_t capacity = 0;

    /// Independent set in ascending vertex order; member k owns beam k.
    std::vector<Vertex> independent_set;
    /// user -> beam for every integrally placed user
    std::vector<std::optional<std::size_t>> assigned;
    std::size_t active_beams = 0;
    /// Users left for the annealer, ascending.
    std::vector<Vertex> unassigned;
    /// W - load per active beam
    std::vector<std::size_t> residual_capacity;
    /// Optimal value of the LP relaxation of the pre-assigned problem.
    double lp_lower_bound = 0.0;
    /// min(B - active, |unassigned|)
    std::size_t extra_beam_budget = 0;
    bool allow_active_beam_join = false;

    bool fully_assigned() const noexcept { return unassigned.empty(); }
    std::size_t load(std::size_t beam) const;
};

/// LP relaxation of the clique-cover program with `preassigned[k]` pinned to
/// beam k (a = 1 there and 0 elsewhere). With no pre-assignment this is the
/// relaxation of the original problem.
///
/// Variables: a(i, b) at index b*N + i, then z(b) at N*B + b. Every beam is
/// spelled out, so the size grows with N^2 B; meant for small instances.
LinearProgram assignment_lp(const ProblemInstance& inst, std::span<const Vertex> preassigned);

/// The same relaxation with the interchangeable, not-pre-assigned beams
/// folded into one representative copy (their common value), and variables
/// forced to zero by the pre-assignment removed. Same optimal value as
/// assignment_lp, far fewer rows.
struct CompactAssignmentLp {
    LinearProgram lp;
    std::size_t pinned_beams = 0;     // K
    std::size_t free_beams = 0;       // m = B - K
    std::vector<Vertex> remaining;    // users not pinned
    /// per remaining user: (beam k < K, LP column) for candidate pinned beams
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pinned_columns;
    /// per remaining user: LP column of the shared free-beam assignment, if m > 0
    std::vector<std::size_t> free_column;
    /// LP column of the shared free-beam activation, if m > 0
    std::size_t free_activation = 0;
};

CompactAssignmentLp compact_assignment_lp(const ProblemInstance& inst,
                                          std::span<const Vertex> preassigned);

/// Two-step presolve: greedy independent set pinned to distinct beams, then
/// the LP relaxation of the remaining problem, rounded at
/// kIntegralityTolerance.
PresolveState presolve(const ProblemInstance& inst, const PresolveOptions& opts = {});

/// Reduced Hamiltonian over the variables the presolve left open.
struct ReducedHamiltonian {
    QuboMatrix qubo;
    VariableLayout layout;
    /// reduced index -> full index, ascending
    std::vector<std::size_t> free_to_full;
    /// Full-length bitstring holding every fixed value; free entries are 0.
    Bitstring fixed;
    /// New beams whose slack was dropped: [first_new_beam, first_new_beam + count)
    std::size_t first_new_beam = 0;
    std::size_t new_beam_count = 0;

    std::size_t num_free() const noexcept { return free_to_full.size(); }
};

/// Free variables: z and a(i, b) for i unassigned on beams
/// active..active+extra-1, and slack s(b, 1..W_b) for every active beam with
/// residual W_b > 0. Everything else is fixed to its presolved value. The new
/// beams carry no slack and no capacity penalty.
///
/// Throws ValidationError when the state is fully assigned and CapacityError
/// when the free count exceeds opts.max_free_variables.
ReducedHamiltonian build_reduced_hamiltonian(const PresolveState& state,
                                             const ProblemInstance& inst,
                                             const PresolveOptions& opts = {});

/// Full bitstring for a reduced sample: fixed values, the sample, and the
/// slack of each new beam completed so its capacity row is exact when the
/// load allows it.
Bitstring merge_bits(const ReducedHamiltonian& red, std::span<const Bit> sample);

/// Decoded, feasibility-checked solution of the original problem.
BeamSolution merge(const ReducedHamiltonian& red, const ProblemInstance& inst,
                   std::span<const Bit> sample);

/// Solution read straight from a fully assigned state.
BeamSolution solution_from_state(const PresolveState& state, const ProblemInstance& inst);

/// 1 - reduced / full, or 1 when nothing is left for the annealer.
double reduction_ratio(std::size_t full_qubits, std::size_t reduced_qubits);

/// Plain "key: value" report.
std::string presolve_report(const PresolveState& state, std::optional<std::size_t> reduced_qubits);

}  // namespace beamqubo
