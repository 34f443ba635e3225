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

#include "beamqubo/baseline.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "beamqubo/errors.hpp"
#include "beamqubo/rng.hpp"

namespace beamqubo {

BeamSolution best_fit(const ProblemInstance& inst, std::span<const Vertex> order) {
    inst.validate();
    const std::size_t n = inst.users();
    if (order.size() != n) throw ValidationError("order is not a permutation of the users");
    std::vector<bool> seen(n, false);
    for (Vertex v : order) {
        if (v >= n || seen[v]) throw ValidationError("order is not a permutation of the users");
        seen[v] = true;
    }

    BeamSolution sol(n, inst.beams);
    std::vector<std::vector<Vertex>> members;
    for (Vertex u : order) {
        std::size_t chosen = members.size();
        for (std::size_t b = 0; b < members.size(); ++b) {
            if (members[b].size() >= inst.capacity) continue;
            const bool fits = std::all_of(members[b].begin(), members[b].end(),
                                          [&](Vertex m) { return inst.graph.adjacent(u, m); });
            if (!fits) continue;
            if (chosen == members.size() || members[b].size() > members[chosen].size()) chosen = b;
        }
        if (chosen == members.size()) {
            if (members.size() == inst.beams) {
                throw BudgetExhaustedError("best fit needs more than " +
                                           std::to_string(inst.beams) + " beams");
            }
            members.emplace_back();
            sol.active[chosen] = 1;
        }
        members[chosen].push_back(u);
        sol.set_a(u, chosen, 1);
    }
    sol.refresh_objective();
    sol.violations = check_feasibility(sol, inst);
    return sol;
}

BeamSolution best_fit(const ProblemInstance& inst) {
    std::vector<Vertex> order(inst.users());
    std::iota(order.begin(), order.end(), Vertex{0});
    return best_fit(inst, order);
}

std::vector<Vertex> shuffled_order(std::size_t n, std::uint64_t seed) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::mt19937_64 rng(splitmix64(seed));
    // Fisher-Yates
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(unit_double(rng) * static_cast<double>(i));
        std::swap(order[i - 1], order[std::min(j, i - 1)]);
    }
    return order;
}

}  // namespace beamqubo
