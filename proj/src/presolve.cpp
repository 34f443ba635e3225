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

#include "beamqubo/presolve.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "beamqubo/errors.hpp"

namespace beamqubo {

std::size_t PresolveState::load(std::size_t beam) const {
    std::size_t l = 0;
    for (const auto& b : assigned) l += (b && *b == beam);
    return l;
}

namespace {

void check_preassignment(const ProblemInstance& inst, std::span<const Vertex> pre) {
    if (pre.size() > inst.beams) {
        throw InfeasibleError("independent set of size " + std::to_string(pre.size()) +
                              " needs more beams than the budget of " +
                              std::to_string(inst.beams));
    }
    if (!is_independent(inst.graph, pre)) {
        throw ValidationError("pre-assigned users are not pairwise independent");
    }
    std::vector<Vertex> sorted(pre.begin(), pre.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("pre-assigned users repeat");
    }
}

}  // namespace

LinearProgram assignment_lp(const ProblemInstance& inst, std::span<const Vertex> preassigned) {
    inst.validate();
    check_preassignment(inst, preassigned);
    const std::size_t n = inst.users();
    const std::size_t nb = inst.beams;
    const double w = static_cast<double>(inst.capacity);

    LinearProgram lp;
    auto a = [n](std::size_t i, std::size_t b) { return b * n + i; };
    auto z = [n, nb](std::size_t b) { return n * nb + b; };
    for (std::size_t k = 0; k < n * nb; ++k) lp.add_variable(0.0, 0.0, 1.0);
    for (std::size_t b = 0; b < nb; ++b) lp.add_variable(1.0, 0.0, 1.0);
    for (std::size_t k = 0; k < preassigned.size(); ++k) {
        for (std::size_t b = 0; b < nb; ++b) {
            const double v = b == k ? 1.0 : 0.0;
            lp.lower[a(preassigned[k], b)] = v;
            lp.upper[a(preassigned[k], b)] = v;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, double>> row;
        for (std::size_t b = 0; b < nb; ++b) row.emplace_back(a(i, b), 1.0);
        lp.add_row(std::move(row), Relation::Equal, 1.0);
    }
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            lp.add_row({{a(i, b), 1.0}, {z(b), -1.0}}, Relation::LessEqual, 0.0);
        }
    }
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!inst.graph.adjacent(i, j)) {
                    lp.add_row({{a(i, b), 1.0}, {a(j, b), 1.0}}, Relation::LessEqual, 1.0);
                }
            }
        }
    }
    for (std::size_t b = 0; b < nb; ++b) {
        std::vector<std::pair<std::size_t, double>> row;
        for (std::size_t i = 0; i < n; ++i) row.emplace_back(a(i, b), 1.0);
        lp.add_row(std::move(row), Relation::LessEqual, w);
    }
    return lp;
}

CompactAssignmentLp compact_assignment_lp(const ProblemInstance& inst,
                                          std::span<const Vertex> preassigned) {
    inst.validate();
    check_preassignment(inst, preassigned);
    const auto& g = inst.graph;
    const std::size_t n = inst.users();

    CompactAssignmentLp out;
    out.pinned_beams = preassigned.size();
    out.free_beams = inst.beams - out.pinned_beams;
    const std::size_t kp = out.pinned_beams;
    const std::size_t m = out.free_beams;
    const double w = static_cast<double>(inst.capacity);

    std::vector<bool> pinned(n, false);
    for (Vertex v : preassigned) pinned[v] = true;
    for (Vertex v = 0; v < n; ++v) {
        if (!pinned[v]) out.remaining.push_back(v);
    }
    const auto& rem = out.remaining;

    LinearProgram& lp = out.lp;
    // every pinned beam is active in any feasible point
    lp.offset = static_cast<double>(kp);

    // A remaining user can only share a pinned beam with its owner's neighbours.
    out.pinned_columns.resize(rem.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> beam_members(kp);
    for (std::size_t r = 0; r < rem.size(); ++r) {
        for (std::size_t k = 0; k < kp; ++k) {
            if (g.adjacent(rem[r], preassigned[k])) {
                const std::size_t col = lp.add_variable(0.0);
                out.pinned_columns[r].emplace_back(k, col);
                beam_members[k].emplace_back(r, col);
            }
        }
    }
    if (m > 0) {
        for (std::size_t r = 0; r < rem.size(); ++r) out.free_column.push_back(lp.add_variable(0.0));
        out.free_activation = lp.add_variable(static_cast<double>(m));
    }

    for (std::size_t r = 0; r < rem.size(); ++r) {
        std::vector<std::pair<std::size_t, double>> row;
        for (const auto& [k, col] : out.pinned_columns[r]) row.emplace_back(col, 1.0);
        if (m > 0) row.emplace_back(out.free_column[r], static_cast<double>(m));
        lp.add_row(std::move(row), Relation::Equal, 1.0);
    }
    if (m > 0) {
        for (std::size_t r = 0; r < rem.size(); ++r) {
            lp.add_row({{out.free_column[r], 1.0}, {out.free_activation, -1.0}},
                       Relation::LessEqual, 0.0);
        }
    }
    for (std::size_t k = 0; k < kp; ++k) {
        const auto& members = beam_members[k];
        for (std::size_t p = 0; p < members.size(); ++p) {
            for (std::size_t q = p + 1; q < members.size(); ++q) {
                if (!g.adjacent(rem[members[p].first], rem[members[q].first])) {
                    lp.add_row({{members[p].second, 1.0}, {members[q].second, 1.0}},
                               Relation::LessEqual, 1.0);
                }
            }
        }
        if (!members.empty()) {
            std::vector<std::pair<std::size_t, double>> row;
            for (const auto& [r, col] : members) row.emplace_back(col, 1.0);
            lp.add_row(std::move(row), Relation::LessEqual, w - 1.0);
        }
    }
    if (m > 0) {
        // With two or more free beams C1 already caps each share at 1/m <= 1/2,
        // so the pairwise rows only bind when a single free beam remains.
        if (m == 1) {
            for (std::size_t r = 0; r < rem.size(); ++r) {
                for (std::size_t s = r + 1; s < rem.size(); ++s) {
                    if (!g.adjacent(rem[r], rem[s])) {
                        lp.add_row({{out.free_column[r], 1.0}, {out.free_column[s], 1.0}},
                                   Relation::LessEqual, 1.0);
                    }
                }
            }
        }
        std::vector<std::pair<std::size_t, double>> row;
        for (std::size_t r = 0; r < rem.size(); ++r) row.emplace_back(out.free_column[r], 1.0);
        if (!row.empty()) lp.add_row(std::move(row), Relation::LessEqual, w);
    }
    return out;
}

PresolveState presolve(const ProblemInstance& inst, const PresolveOptions& opts) {
    inst.validate();
    const std::size_t n = inst.users();

    PresolveState st;
    st.users = n;
    st.beams = inst.beams;
    st.capacity = inst.capacity;
    st.allow_active_beam_join = opts.allow_active_beam_join;
    st.independent_set = greedy_independent_set(inst.graph);
    std::sort(st.independent_set.begin(), st.independent_set.end());

    const auto clp = compact_assignment_lp(inst, st.independent_set);
    const LpSolution sol = lp_solve(clp.lp, opts.lp);
    st.lp_lower_bound = sol.objective;

    const double one = 1.0 - kIntegralityTolerance;
    st.assigned.assign(n, std::nullopt);
    for (std::size_t k = 0; k < st.independent_set.size(); ++k) st.assigned[st.independent_set[k]] = k;
    st.active_beams = clp.pinned_beams;

    // The shared free-beam column can only be integral when exactly one free
    // beam exists; with more it is spread as 1/m across them.
    bool free_beam_active = false;
    if (clp.free_beams == 1 && sol.values[clp.free_activation] >= one) {
        free_beam_active = true;
        ++st.active_beams;
    }
    for (std::size_t r = 0; r < clp.remaining.size(); ++r) {
        const Vertex u = clp.remaining[r];
        for (const auto& [k, col] : clp.pinned_columns[r]) {
            if (sol.values[col] >= one) st.assigned[u] = k;
        }
        if (clp.free_beams == 1 && free_beam_active && sol.values[clp.free_column[r]] >= one) {
            st.assigned[u] = clp.pinned_beams;
        }
    }
    // Active beams are already contiguous: pinned beams 0..K-1, then the
    // single free beam when it is on.

    for (Vertex v = 0; v < n; ++v) {
        if (!st.assigned[v]) st.unassigned.push_back(v);
    }
    st.residual_capacity.assign(st.active_beams, inst.capacity);
    for (const auto& b : st.assigned) {
        if (b) {
            if (st.residual_capacity[*b] == 0) {
                throw InfeasibleError("LP rounding overfilled beam " + std::to_string(*b));
            }
            --st.residual_capacity[*b];
        }
    }
    st.extra_beam_budget = std::min(inst.beams - st.active_beams, st.unassigned.size());
    return st;
}

ReducedHamiltonian build_reduced_hamiltonian(const PresolveState& state,
                                             const ProblemInstance& inst,
                                             const PresolveOptions& opts) {
    inst.validate();
    if (state.users != inst.users() || state.beams != inst.beams ||
        state.capacity != inst.capacity) {
        throw ValidationError("presolve state does not belong to this instance");
    }
    if (state.fully_assigned()) {
        throw ValidationError("every user is already assigned; nothing to reduce");
    }

    const VariableLayout layout(inst.users(), inst.beams, inst.capacity);
    const std::size_t w = inst.capacity;
    const std::size_t first_new = state.active_beams;
    const std::size_t end_new = first_new + state.extra_beam_budget;
    constexpr auto kFree = ConditioningSink::kFree;

    std::vector<std::uint8_t> mask(layout.size(), 0);
    for (Vertex u = 0; u < inst.users(); ++u) {
        if (state.assigned[u]) mask[layout.a_index(u, *state.assigned[u])] = 1;
    }
    for (std::size_t b = 0; b < inst.beams; ++b) {
        if (b < first_new) {
            mask[layout.z_index(b)] = 1;
            for (std::size_t k = 1; k <= state.residual_capacity[b]; ++k) {
                mask[layout.s_index(b, k)] = kFree;
            }
            if (state.allow_active_beam_join && state.residual_capacity[b] > 0) {
                for (Vertex u : state.unassigned) mask[layout.a_index(u, b)] = kFree;
            }
        } else if (b < end_new) {
            mask[layout.z_index(b)] = kFree;
            for (Vertex u : state.unassigned) mask[layout.a_index(u, b)] = kFree;
        } else {
            // unused beam: empty, inactive, capacity row closed by the top slack
            mask[layout.s_index(b, w)] = 1;
        }
    }

    const auto n_free = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), kFree));
    if (n_free > opts.max_free_variables) {
        throw CapacityError("reduced Hamiltonian has " + std::to_string(n_free) +
                                " free variables, annealer capacity is " +
                                std::to_string(opts.max_free_variables),
                            n_free);
    }

    ReducedHamiltonian red;
    red.layout = layout;
    red.first_new_beam = first_new;
    red.new_beam_count = state.extra_beam_budget;
    red.fixed.assign(layout.size(), 0);
    for (std::size_t k = 0; k < mask.size(); ++k) red.fixed[k] = mask[k] == 1 ? 1 : 0;

    QuboOptions qopts;
    qopts.lambda = opts.lambda;
    qopts.max_variables = std::numeric_limits<std::size_t>::max();
    qopts.capacity_penalty.assign(inst.beams, true);
    for (std::size_t b = first_new; b < end_new; ++b) qopts.capacity_penalty[b] = false;

    ConditioningSink sink(std::move(mask));
    emit_qubo_terms(inst, layout, qopts, sink);
    auto cq = std::move(sink).finish();
    red.qubo = std::move(cq.qubo);
    red.free_to_full = std::move(cq.free_to_full);
    return red;
}

Bitstring merge_bits(const ReducedHamiltonian& red, std::span<const Bit> sample) {
    if (sample.size() != red.free_to_full.size()) {
        throw ValidationError("sample length " + std::to_string(sample.size()) +
                              " does not match " + std::to_string(red.free_to_full.size()) +
                              " free variables");
    }
    Bitstring x = red.fixed;
    for (std::size_t k = 0; k < sample.size(); ++k) x[red.free_to_full[k]] = sample[k] ? 1 : 0;

    const auto& lay = red.layout;
    for (std::size_t b = red.first_new_beam; b < red.first_new_beam + red.new_beam_count; ++b) {
        std::size_t load = 0;
        for (std::size_t i = 0; i < lay.users(); ++i) load += x[lay.a_index(i, b)];
        if (load < lay.capacity()) x[lay.s_index(b, lay.capacity() - load)] = 1;
    }
    return x;
}

BeamSolution merge(const ReducedHamiltonian& red, const ProblemInstance& inst,
                   std::span<const Bit> sample) {
    return decode(merge_bits(red, sample), red.layout, inst);
}

BeamSolution solution_from_state(const PresolveState& state, const ProblemInstance& inst) {
    if (state.users != inst.users() || state.beams != inst.beams) {
        throw ValidationError("presolve state does not belong to this instance");
    }
    BeamSolution sol(inst.users(), inst.beams);
    for (Vertex u = 0; u < inst.users(); ++u) {
        if (state.assigned[u]) sol.set_a(u, *state.assigned[u], 1);
    }
    for (std::size_t b = 0; b < state.active_beams; ++b) sol.active[b] = 1;
    sol.refresh_objective();
    sol.violations = check_feasibility(sol, inst);
    return sol;
}

double reduction_ratio(std::size_t full_qubits, std::size_t reduced_qubits) {
    if (reduced_qubits == 0 || full_qubits == 0) return 1.0;
    return 1.0 - static_cast<double>(reduced_qubits) / static_cast<double>(full_qubits);
}

std::string presolve_report(const PresolveState& state, std::optional<std::size_t> reduced_qubits) {
    const std::size_t full = qubit_count(state.users, state.beams, state.capacity);
    const std::size_t reduced = reduced_qubits.value_or(0);
    std::size_t assigned = 0;
    for (const auto& b : state.assigned) assigned += b.has_value();

    std::ostringstream ss;
    ss << std::setprecision(12);
    ss << "users: " << state.users << '\n';
    ss << "beam_budget: " << state.beams << '\n';
    ss << "capacity: " << state.capacity << '\n';
    ss << "independent_set: " << state.independent_set.size() << '\n';
    ss << "active_beams: " << state.active_beams << '\n';
    ss << "assigned_users: " << assigned << '\n';
    ss << "unassigned_users: " << state.unassigned.size() << '\n';
    ss << "extra_beam_budget: " << state.extra_beam_budget << '\n';
    ss << "lp_lower_bound: " << state.lp_lower_bound << '\n';
    ss << "qubits_full: " << full << '\n';
    ss << "qubits_reduced: " << reduced << '\n';
    ss << "reduction_ratio: " << reduction_ratio(full, reduced) << '\n';
    ss << "fully_presolved: " << (state.fully_assigned() ? "true" : "false") << '\n';
    return ss.str();
}

}  // namespace beamqubo
