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
#include <span>
#include <utility>
#include <vector>

namespace beamqubo {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearRow {
    std::vector<std::pair<std::size_t, double>> terms;
    Relation relation = Relation::LessEqual;
    double rhs = 0.0;
};

/// min c^T x + offset  s.t.  rows,  lower <= x <= upper.
///
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
    std::vector<double> cost;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<LinearRow> rows;
    double offset = 0.0;

    std::size_t num_variables() const noexcept { return cost.size(); }

    std::size_t add_variable(double c, double lo = 0.0, double up = 1.0);
    std::size_t add_row(std::vector<std::pair<std::size_t, double>> terms, Relation rel,
                        double rhs);

    void validate() const;
};

struct LpOptions {
    /// Pivot budget; 0 picks a size-based default.
    std::size_t max_iterations = 0;
    double feasibility_tolerance = 1e-9;
    double optimality_tolerance = 1e-9;
};

struct LpSolution {
    std::vector<double> values;
    double objective = 0.0;
    std::size_t iterations = 0;
    /// max over rows and bounds of the constraint violation at `values`
    double max_residual = 0.0;
};

/// Bounded-variable primal simplex (dense tableau, two phases) using Bland's
/// smallest-index rule for both entering and leaving choices, so it cannot
/// cycle. Returns a basic optimal solution.
///
/// Throws InfeasibleError naming a violated row when phase one ends with
/// positive infeasibility, and ResourceError when the pivot budget runs out.
LpSolution lp_solve(const LinearProgram& lp, const LpOptions& opts = {});

/// Largest violation of rows and bounds at x.
double lp_residual(const LinearProgram& lp, std::span<const double> x);

}  // namespace beamqubo
