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

#include <cstdint>
#include <span>
#include <vector>

#include "beamqubo/qubo.hpp"

namespace beamqubo {

/// Greedy Best Fit placement. Each user, in `order`, joins the most loaded
/// active beam that has room and whose members are all adjacent to it (lowest
/// beam index on ties); otherwise a new beam is activated.
///
/// Throws ValidationError when `order` is not a permutation of the users and
/// BudgetExhaustedError when more than B beams would be needed.
BeamSolution best_fit(const ProblemInstance& inst, std::span<const Vertex> order);

/// best_fit in input order 0..N-1.
BeamSolution best_fit(const ProblemInstance& inst);

/// Seeded permutation of 0..n-1.
std::vector<Vertex> shuffled_order(std::size_t n, std::uint64_t seed);

}  // namespace beamqubo
