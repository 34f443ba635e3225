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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beamqubo/baseline.hpp"
#include "beamqubo/geometry.hpp"
#include "beamqubo/presolve.hpp"
#include "beamqubo/qubo.hpp"
#include "beamqubo/remote.hpp"
#include "beamqubo/sampler.hpp"

namespace beamqubo {

/// Longitude/latitude box in degrees: west, south, east, north.
struct BoundingBox {
    double west = 0.0;
    double south = 0.0;
    double east = 0.0;
    double north = 0.0;

    void validate() const;
    bool contains(double latitude_deg, double longitude_deg) const noexcept;

    /// Parses "w,s,e,n". Throws ValidationError.
    static BoundingBox parse(const std::string& text);
    /// Our choice of box around the Gulf of Mexico: -98,18,-81,31.
    static BoundingBox gulf_of_mexico() noexcept { return {-98.0, 18.0, -81.0, 31.0}; }
};

struct AisLoadResult {
    UserSet users;
    /// rows that could not be parsed
    std::size_t skipped = 0;
};

/// Vessel positions from a CSV with a header naming an identifier column
/// (MMSI, VESSEL_ID or ID), LAT and LON, case-insensitive. Rows outside the
/// box are dropped; the first row per identifier wins.
///
/// Throws IoError when the file cannot be read and FormatError naming the
/// missing columns.
AisLoadResult load_ais_csv(const std::string& path, const BoundingBox& bbox);
AisLoadResult read_ais_csv(std::istream& in, const BoundingBox& bbox);

/// `n` users around `clusters` centres drawn uniformly in `bbox`. The first
/// user of each cluster sits on its centre; the others are uniform in a disc
/// of `spread_deg` degrees of arc around it. Users pick clusters round-robin.
UserSet synthesize_users(std::size_t n, std::size_t clusters, double spread_deg,
                         std::uint64_t seed, const BoundingBox& bbox);

/// Seeded sample of `n` distinct users from `pool`, in pool order.
UserSet sample_users(const UserSet& pool, std::size_t n, std::uint64_t seed);

/// Graph from geometry plus beam budget and capacity.
ProblemInstance make_instance(const UserSet& users, const SatelliteGeometry& sat,
                              std::size_t beams, std::size_t capacity);

enum class Backend { Exact, Annealing, Remote };

std::string backend_name(Backend b);
/// "exact", "sa" or "remote"
Backend parse_backend(const std::string& name);

struct PipelineOptions {
    Backend backend = Backend::Annealing;
    AnnealSchedule schedule;
    ExactOptions exact;
    RemoteEndpoint remote;
    PresolveOptions presolve;
};

enum class SolvedBy { PresolveOnly, Annealer, Failed };

std::string solved_by_name(SolvedBy s);

/// Presolve, reduced Hamiltonian, backend, merge.
struct PipelineResult {
    PresolveState state;
    BeamSolution solution;
    SolvedBy solved_by = SolvedBy::PresolveOnly;
    std::size_t qubits = 0;
    std::size_t reduced_qubits = 0;
    /// lowest-energy reduced sample, when the backend ran
    std::optional<Sample> best;
    double presolve_s = 0.0;
    double solve_s = 0.0;
};

PipelineResult solve_pipeline(const ProblemInstance& inst, const PipelineOptions& opts);

struct ExperimentConfig {
    std::vector<std::size_t> user_counts{100};
    std::size_t realizations = 1;
    /// Satellite position; the cone angle is taken from alpha_deg.
    GeoPoint satellite{26.812309, -85.386382, 1110.0};
    /// Full beam cone angle in degrees. Required.
    std::optional<double> alpha_deg;
    std::size_t capacity = 20;
    /// Beam budget; unset means B = N.
    std::optional<std::size_t> beams;
    PipelineOptions pipeline;

    /// Vessel file; unset means synthetic users.
    std::optional<std::string> ais_path;
    BoundingBox bbox = BoundingBox::gulf_of_mexico();
    std::size_t clusters = 10;
    double spread_deg = 0.15;

    std::uint64_t master_seed = 0;
    /// Worker threads across realizations; output does not depend on it.
    std::size_t threads = 1;

    void validate() const;
    SatelliteGeometry geometry() const;
};

struct RealizationRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t users = 0;
    std::size_t beams = 0;
    std::size_t capacity = 0;
    std::size_t qubits = 0;
    std::size_t reduced_qubits = 0;
    double reduction_ratio = 0.0;
    SolvedBy solved_by = SolvedBy::Failed;
    bool feasible = false;
    std::optional<std::size_t> objective_qa;
    std::optional<std::size_t> objective_best_fit;
    bool best_fit_feasible = false;
    double lp_lower_bound = 0.0;
    /// Set when lp <= qa <= best fit (or lp <= best fit) does not hold.
    bool bound_exception = false;
    std::string error;

    double presolve_s = 0.0;
    double solve_s = 0.0;
    double best_fit_s = 0.0;
    double total_s = 0.0;
};

/// Seed of realization `index` under `master`.
std::uint64_t realization_seed(std::uint64_t master, std::size_t index);

/// One realization; failures are recorded, never thrown.
RealizationRecord run_realization(const ExperimentConfig& cfg, std::size_t users,
                                  std::size_t index, const UserSet* pool);

/// All realizations, ordered by index (user counts outer, realizations inner).
std::vector<RealizationRecord> run_experiment(const ExperimentConfig& cfg);

/// Deterministic CSV without timings.
void write_records_csv(std::ostream& out, const std::vector<RealizationRecord>& records);
/// index plus the timing columns
void write_timings_csv(std::ostream& out, const std::vector<RealizationRecord>& records);

/// Linear-interpolation quantile of unsorted data; p in [0, 1].
double quantile(std::vector<double> data, double p);

/// JSON summary grouped by user count.
std::string summarize(const std::vector<RealizationRecord>& records);

/// Writes records.csv, timings.csv and summary.json into `dir`.
void write_experiment(const std::string& dir, const std::vector<RealizationRecord>& records);

}  // namespace beamqubo
