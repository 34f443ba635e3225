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

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "beamqubo/qubo.hpp"

namespace beamqubo {

struct Sample {
    Bitstring bits;
    double energy = 0.0;
    std::size_t occurrences = 1;

    friend bool operator==(const Sample&, const Sample&) = default;
};

/// Samples sorted by (energy, bitstring); best() is the first one.
struct SampleResult {
    std::vector<Sample> samples;
    std::string backend;
    double wall_time_s = 0.0;

    const Sample& best() const;
};

/// Geometric inverse-temperature schedule for single-flip Metropolis.
struct AnnealSchedule {
    std::size_t sweeps = 1000;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    std::size_t reads = 100;
    std::uint64_t seed = 0;
    /// Worker threads for reads; results do not depend on it.
    std::size_t threads = 1;

    void validate() const;
    /// beta for sweep `s` of `sweeps`
    double beta(std::size_t s) const;
};

struct ExactOptions {
    /// Exhaustive enumeration up to this many variables.
    std::size_t enumeration_cap = 24;
    /// Beyond the enumeration cap, exact variable elimination is used while
    /// the induced width of the elimination order stays within this bound.
    std::size_t width_cap = 22;
};

/// Ground-truth minimiser. Ties are broken towards the lexicographically
/// smallest bitstring when enumerating.
///
/// Throws CapacityError when the problem is beyond both caps.
SampleResult solve_exact(const QuboMatrix& q, const ExactOptions& opts = {});

/// Exhaustive Gray-code enumeration only.
SampleResult solve_exhaustive(const QuboMatrix& q, std::size_t cap = 24);

/// Bucket (variable) elimination with min-fill ordering. Exact for any size
/// whose induced width is at most `width_cap`.
SampleResult solve_by_elimination(const QuboMatrix& q, std::size_t width_cap = 22);

/// Induced width of the min-fill elimination order of q's interaction graph.
std::size_t elimination_width(const QuboMatrix& q);

/// Classical single-flip simulated annealing. Deterministic for a given
/// (q, schedule), including across thread counts.
SampleResult simulated_annealing(const QuboMatrix& q, const AnnealSchedule& sched);

/// Collapses duplicate bitstrings, recomputes energies with q.energy and
/// sorts by (energy, bitstring).
SampleResult collect_samples(const QuboMatrix& q, std::vector<Bitstring> reads,
                             std::string backend);

}  // namespace beamqubo
