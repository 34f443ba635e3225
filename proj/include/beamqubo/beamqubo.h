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

#ifndef BEAMQUBO_BEAMQUBO_H_
#define BEAMQUBO_BEAMQUBO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BEAMQUBO_BUILDING_SHARED)
#    define BQ_API __declspec(dllexport)
#  else
#    define BQ_API __declspec(dllimport)
#  endif
#else
#  define BQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/// Status codes. Every function returning bq_status leaves a message for
/// bq_last_error_message() on failure.
typedef enum bq_status {
    BQ_OK = 0,
    BQ_ERR_VALIDATION = 1,
    BQ_ERR_DEGENERATE_GEOMETRY = 2,
    BQ_ERR_CAPACITY = 3,
    BQ_ERR_INFEASIBLE = 4,
    BQ_ERR_RESOURCE = 5,
    BQ_ERR_BUDGET_EXHAUSTED = 6,
    BQ_ERR_TRANSPORT = 7,
    BQ_ERR_PROTOCOL = 8,
    BQ_ERR_FORMAT = 9,
    BQ_ERR_IO = 10,
    BQ_ERR_NULL_ARGUMENT = 11,
    BQ_ERR_INTERNAL = 12
} bq_status;

typedef enum bq_backend {
    BQ_BACKEND_EXACT = 0,
    BQ_BACKEND_SA = 1,
    BQ_BACKEND_REMOTE = 2
} bq_backend;

typedef enum bq_solved_by {
    BQ_SOLVED_PRESOLVE = 0,
    BQ_SOLVED_ANNEALER = 1,
    BQ_SOLVED_FAILED = 2,
    BQ_SOLVED_BASELINE = 3
} bq_solved_by;

typedef struct bq_instance bq_instance;
typedef struct bq_qubo bq_qubo;
typedef struct bq_presolve bq_presolve;
typedef struct bq_solution bq_solution;

/// Message of the last failed call on this thread; empty after success.
BQ_API const char* bq_last_error_message(void);
BQ_API const char* bq_status_string(bq_status status);
BQ_API const char* bq_version(void);
/// Last HTTP status seen by a failed remote call on this thread, else 0.
BQ_API int bq_last_http_status(void);

/* ---- instances ---------------------------------------------------------- */

typedef struct bq_geometry {
    double satellite_lat_deg;
    double satellite_lon_deg;
    double satellite_alt_km;
    /// full cone angle; must be set
    double alpha_deg;
} bq_geometry;

/// Satellite over the Gulf of Mexico at 1110 km; alpha_deg 5.
BQ_API void bq_geometry_default(bq_geometry* geom);

typedef struct bq_synthetic {
    size_t users;
    size_t clusters;
    double spread_deg;
    uint64_t seed;
    /// west, south, east, north
    double bbox[4];
} bq_synthetic;

BQ_API void bq_synthetic_default(bq_synthetic* syn);

/// `beams` 0 means one beam per user.
BQ_API bq_status bq_instance_from_edges(size_t users, const size_t* edges, size_t num_edges,
                                        size_t beams, size_t capacity, bq_instance** out);
BQ_API bq_status bq_instance_read_edge_list(const char* path, size_t beams, size_t capacity,
                                            bq_instance** out);
BQ_API bq_status bq_instance_synthetic(const bq_synthetic* syn, const bq_geometry* geom,
                                       size_t beams, size_t capacity, bq_instance** out);
/// `users` 0 keeps every vessel in the box; otherwise a seeded sample.
/// `skipped` (optional) receives the count of unparseable rows.
BQ_API bq_status bq_instance_from_ais(const char* path, const double bbox[4], size_t users,
                                      uint64_t seed, const bq_geometry* geom, size_t beams,
                                      size_t capacity, bq_instance** out, size_t* skipped);
BQ_API bq_status bq_instance_info(const bq_instance* inst, size_t* users, size_t* edges,
                                  size_t* beams, size_t* capacity);
BQ_API bq_status bq_instance_write_edge_list(const bq_instance* inst, const char* path);
BQ_API void bq_instance_free(bq_instance* inst);

/// Number of variables N*B + B + W*B.
BQ_API size_t bq_qubit_count(size_t users, size_t beams, size_t capacity);

/* ---- QUBO --------------------------------------------------------------- */

/// `lambda` <= 0 selects B + 1.
BQ_API bq_status bq_qubo_build(const bq_instance* inst, double lambda, bq_qubo** out);
BQ_API bq_status bq_qubo_read(const char* path, bq_qubo** out);
BQ_API bq_status bq_qubo_write(const bq_qubo* q, const char* path);
BQ_API bq_status bq_qubo_info(const bq_qubo* q, size_t* size, size_t* terms, double* offset);
BQ_API bq_status bq_qubo_energy(const bq_qubo* q, const uint8_t* bits, size_t n,
                                double* energy);
BQ_API void bq_qubo_free(bq_qubo* q);

/* ---- solvers ------------------------------------------------------------ */

typedef struct bq_solver_config {
    bq_backend backend;
    size_t sweeps;
    size_t reads;
    double beta_initial;
    double beta_final;
    uint64_t seed;
    size_t threads;
    int allow_active_beam_join;
    /// 0 means unlimited
    size_t max_free_variables;
    /// <= 0 selects B + 1
    double lambda;
    /// remote only; 0 selects 60000
    uint32_t timeout_ms;
} bq_solver_config;

BQ_API void bq_solver_config_default(bq_solver_config* cfg);

/// Minimises a QUBO directly. `bits` must hold the QUBO size.
BQ_API bq_status bq_qubo_solve(const bq_qubo* q, const bq_solver_config* cfg, uint8_t* bits,
                               size_t n, double* energy);

/* ---- presolve ----------------------------------------------------------- */

typedef struct bq_presolve_info {
    size_t independent_set;
    size_t active_beams;
    size_t assigned_users;
    size_t unassigned_users;
    size_t extra_beam_budget;
    double lp_lower_bound;
    size_t qubits;
    /// 0 when every user is assigned
    size_t reduced_qubits;
    double reduction_ratio;
} bq_presolve_info;

BQ_API bq_status bq_presolve_run(const bq_instance* inst, const bq_solver_config* cfg,
                                 bq_presolve** out);
BQ_API bq_status bq_presolve_get_info(const bq_presolve* p, bq_presolve_info* info);
/// Copies the text report into `buf` (NUL-terminated, truncated to `cap`);
/// `needed` receives the full length including the terminator.
BQ_API bq_status bq_presolve_report(const bq_presolve* p, char* buf, size_t cap,
                                    size_t* needed);
/// Reduced Hamiltonian; BQ_ERR_VALIDATION when nothing is left to solve.
BQ_API bq_status bq_presolve_reduced_qubo(const bq_presolve* p, bq_qubo** out);
BQ_API void bq_presolve_free(bq_presolve* p);

/* ---- solutions ---------------------------------------------------------- */

typedef struct bq_solution_info {
    size_t users;
    size_t beams;
    size_t objective;
    int feasible;
    size_t violations;
    bq_solved_by solved_by;
    size_t qubits;
    size_t reduced_qubits;
    double lp_lower_bound;
    double energy;
} bq_solution_info;

/// Presolve, reduced Hamiltonian, backend and merge.
BQ_API bq_status bq_solve(const bq_instance* inst, const bq_solver_config* cfg,
                          bq_solution** out);
/// Best Fit in input order, or in a seeded shuffled order when `shuffle` != 0.
BQ_API bq_status bq_best_fit(const bq_instance* inst, int shuffle, uint64_t shuffle_seed,
                             bq_solution** out);
BQ_API bq_status bq_solution_get_info(const bq_solution* s, bq_solution_info* info);
/// Beam of `user`, or -1 when it is not on exactly one beam.
BQ_API bq_status bq_solution_beam_of(const bq_solution* s, size_t user, int64_t* beam);
/// One violation per line, same buffer protocol as bq_presolve_report.
BQ_API bq_status bq_solution_violations(const bq_solution* s, char* buf, size_t cap,
                                        size_t* needed);
BQ_API void bq_solution_free(bq_solution* s);

/* ---- experiments -------------------------------------------------------- */

typedef struct bq_bench_config {
    const size_t* user_counts;
    size_t num_user_counts;
    size_t realizations;
    bq_geometry geometry;
    size_t capacity;
    /// 0 means one beam per user
    size_t beams;
    /// NULL selects synthetic clustered users
    const char* ais_path;
    double bbox[4];
    size_t clusters;
    double spread_deg;
    uint64_t master_seed;
    size_t threads;
    bq_solver_config solver;
    /// records.csv, timings.csv and summary.json land here; NULL skips output
    const char* out_dir;
} bq_bench_config;

typedef struct bq_bench_summary {
    size_t realizations;
    size_t feasible;
    size_t presolve_only;
    size_t annealer;
    size_t failed;
    size_t bound_exceptions;
    size_t best_fit_feasible;
    double success_probability;
    double median_reduction_ratio;
} bq_bench_summary;

BQ_API void bq_bench_config_default(bq_bench_config* cfg);
BQ_API bq_status bq_bench_run(const bq_bench_config* cfg, bq_bench_summary* summary);

#ifdef __cplusplus
}
#endif

#endif  // BEAMQUBO_BEAMQUBO_H_
