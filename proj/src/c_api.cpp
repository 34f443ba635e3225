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

#include "beamqubo/beamqubo.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "beamqubo/baseline.hpp"
#include "beamqubo/errors.hpp"
#include "beamqubo/harness.hpp"
#include "beamqubo/presolve.hpp"
#include "beamqubo/qubo.hpp"
#include "beamqubo/remote.hpp"
#include "beamqubo/sampler.hpp"

struct bq_instance {
    beamqubo::ProblemInstance inst;
};

struct bq_qubo {
    beamqubo::QuboMatrix q;
};

struct bq_presolve {
    beamqubo::ProblemInstance inst;
    beamqubo::PresolveOptions opts;
    beamqubo::PresolveState state;
    std::unique_ptr<beamqubo::ReducedHamiltonian> reduced;
};

struct bq_solution {
    beamqubo::BeamSolution sol;
    bq_solution_info info{};
};

namespace {

using namespace beamqubo;

thread_local std::string g_error;
thread_local int g_http_status = 0;

bq_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Validation: return BQ_ERR_VALIDATION;
        case ErrorKind::DegenerateGeometry: return BQ_ERR_DEGENERATE_GEOMETRY;
        case ErrorKind::Capacity: return BQ_ERR_CAPACITY;
        case ErrorKind::Infeasible: return BQ_ERR_INFEASIBLE;
        case ErrorKind::Resource: return BQ_ERR_RESOURCE;
        case ErrorKind::BudgetExhausted: return BQ_ERR_BUDGET_EXHAUSTED;
        case ErrorKind::Transport: return BQ_ERR_TRANSPORT;
        case ErrorKind::Protocol: return BQ_ERR_PROTOCOL;
        case ErrorKind::Format: return BQ_ERR_FORMAT;
        case ErrorKind::Io: return BQ_ERR_IO;
    }
    return BQ_ERR_INTERNAL;
}

template <class F>
bq_status guarded(F&& f) noexcept {
    g_error.clear();
    g_http_status = 0;
    try {
        f();
        return BQ_OK;
    } catch (const TransportError& e) {
        g_error = e.what();
        g_http_status = e.status();
        return BQ_ERR_TRANSPORT;
    } catch (const Error& e) {
        g_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return BQ_ERR_RESOURCE;
    } catch (const std::exception& e) {
        g_error = e.what();
        return BQ_ERR_INTERNAL;
    } catch (...) {
        g_error = "unknown error";
        return BQ_ERR_INTERNAL;
    }
}

bq_status null_arg(const char* name) {
    g_error = std::string(name) + " is null";
    g_http_status = 0;
    return BQ_ERR_NULL_ARGUMENT;
}

#define BQ_CHECK_ARG(p) \
    if ((p) == nullptr) return null_arg(#p)

SatelliteGeometry to_geometry(const bq_geometry& g) {
    return {{g.satellite_lat_deg, g.satellite_lon_deg, g.satellite_alt_km}, deg_to_rad(g.alpha_deg)};
}

BoundingBox to_bbox(const double b[4]) { return {b[0], b[1], b[2], b[3]}; }

PresolveOptions to_presolve(const bq_solver_config& c) {
    PresolveOptions p;
    p.allow_active_beam_join = c.allow_active_beam_join != 0;
    if (c.lambda > 0.0) p.lambda = c.lambda;
    if (c.max_free_variables > 0) p.max_free_variables = c.max_free_variables;
    return p;
}

PipelineOptions to_pipeline(const bq_solver_config& c) {
    PipelineOptions p;
    switch (c.backend) {
        case BQ_BACKEND_EXACT: p.backend = Backend::Exact; break;
        case BQ_BACKEND_SA: p.backend = Backend::Annealing; break;
        case BQ_BACKEND_REMOTE: p.backend = Backend::Remote; break;
        default: throw ValidationError("unknown backend");
    }
    p.schedule.sweeps = c.sweeps;
    p.schedule.reads = c.reads;
    p.schedule.beta_initial = c.beta_initial;
    p.schedule.beta_final = c.beta_final;
    p.schedule.seed = c.seed;
    p.schedule.threads = c.threads == 0 ? 1 : c.threads;
    p.presolve = to_presolve(c);
    if (p.backend == Backend::Remote) {
        p.remote = RemoteEndpoint::from_environment();
        p.remote.num_reads = c.reads;
        if (c.timeout_ms > 0) p.remote.timeout = std::chrono::milliseconds(c.timeout_ms);
    }
    return p;
}

std::size_t beams_or_n(std::size_t beams, std::size_t n) { return beams == 0 ? n : beams; }

void copy_text(const std::string& s, char* buf, std::size_t cap, std::size_t* needed) {
    if (needed) *needed = s.size() + 1;
    if (buf != nullptr && cap > 0) {
        const std::size_t n = std::min(cap - 1, s.size());
        std::memcpy(buf, s.data(), n);
        buf[n] = '\0';
    }
}

bq_solution* make_solution(BeamSolution sol, bq_solved_by by) {
    auto* out = new bq_solution{std::move(sol), {}};
    out->info.users = out->sol.users;
    out->info.beams = out->sol.beams;
    out->info.objective = out->sol.objective;
    out->info.feasible = out->sol.feasible() ? 1 : 0;
    out->info.violations = out->sol.violations.size();
    out->info.solved_by = by;
    return out;
}

}  // namespace

extern "C" {

const char* bq_last_error_message(void) { return g_error.c_str(); }

int bq_last_http_status(void) { return g_http_status; }

const char* bq_status_string(bq_status status) {
    switch (status) {
        case BQ_OK: return "ok";
        case BQ_ERR_VALIDATION: return "validation error";
        case BQ_ERR_DEGENERATE_GEOMETRY: return "degenerate geometry";
        case BQ_ERR_CAPACITY: return "capacity exceeded";
        case BQ_ERR_INFEASIBLE: return "infeasible";
        case BQ_ERR_RESOURCE: return "resource limit";
        case BQ_ERR_BUDGET_EXHAUSTED: return "beam budget exhausted";
        case BQ_ERR_TRANSPORT: return "transport error";
        case BQ_ERR_PROTOCOL: return "protocol error";
        case BQ_ERR_FORMAT: return "format error";
        case BQ_ERR_IO: return "i/o error";
        case BQ_ERR_NULL_ARGUMENT: return "null argument";
        case BQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* bq_version(void) { return "0.1.0"; }

size_t bq_qubit_count(size_t users, size_t beams, size_t capacity) {
    return qubit_count(users, beams, capacity);
}

void bq_geometry_default(bq_geometry* geom) {
    if (geom == nullptr) return;
    const ExperimentConfig cfg;
    *geom = {cfg.satellite.latitude_deg, cfg.satellite.longitude_deg, cfg.satellite.altitude_km,
             5.0};
}

void bq_synthetic_default(bq_synthetic* syn) {
    if (syn == nullptr) return;
    const ExperimentConfig cfg;
    const BoundingBox b = BoundingBox::gulf_of_mexico();
    *syn = {100, cfg.clusters, cfg.spread_deg, 0, {b.west, b.south, b.east, b.north}};
}

bq_status bq_instance_from_edges(size_t users, const size_t* edges, size_t num_edges,
                                 size_t beams, size_t capacity, bq_instance** out) {
    BQ_CHECK_ARG(out);
    if (num_edges > 0) BQ_CHECK_ARG(edges);
    return guarded([&] {
        ProximityGraph g(users);
        for (size_t k = 0; k < num_edges; ++k) g.add_edge(edges[2 * k], edges[2 * k + 1]);
        ProblemInstance inst{std::move(g), beams_or_n(beams, users), capacity};
        inst.validate();
        *out = new bq_instance{std::move(inst)};
    });
}

bq_status bq_instance_read_edge_list(const char* path, size_t beams, size_t capacity,
                                     bq_instance** out) {
    BQ_CHECK_ARG(path);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw IoError(std::string("cannot open ") + path);
        ProximityGraph g = read_edge_list(in);
        const size_t n = g.num_vertices();
        ProblemInstance inst{std::move(g), beams_or_n(beams, n), capacity};
        inst.validate();
        *out = new bq_instance{std::move(inst)};
    });
}

bq_status bq_instance_synthetic(const bq_synthetic* syn, const bq_geometry* geom, size_t beams,
                                size_t capacity, bq_instance** out) {
    BQ_CHECK_ARG(syn);
    BQ_CHECK_ARG(geom);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        const UserSet us = synthesize_users(syn->users, syn->clusters, syn->spread_deg, syn->seed,
                                            to_bbox(syn->bbox));
        *out = new bq_instance{
            make_instance(us, to_geometry(*geom), beams_or_n(beams, us.size()), capacity)};
    });
}

bq_status bq_instance_from_ais(const char* path, const double bbox[4], size_t users,
                               uint64_t seed, const bq_geometry* geom, size_t beams,
                               size_t capacity, bq_instance** out, size_t* skipped) {
    BQ_CHECK_ARG(path);
    BQ_CHECK_ARG(bbox);
    BQ_CHECK_ARG(geom);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        AisLoadResult res = load_ais_csv(path, to_bbox(bbox));
        if (skipped) *skipped = res.skipped;
        UserSet us = users == 0 ? std::move(res.users) : sample_users(res.users, users, seed);
        if (us.empty()) throw ValidationError("no vessels inside the bounding box");
        *out = new bq_instance{
            make_instance(us, to_geometry(*geom), beams_or_n(beams, us.size()), capacity)};
    });
}

bq_status bq_instance_info(const bq_instance* inst, size_t* users, size_t* edges, size_t* beams,
                           size_t* capacity) {
    BQ_CHECK_ARG(inst);
    return guarded([&] {
        if (users) *users = inst->inst.users();
        if (edges) *edges = inst->inst.graph.num_edges();
        if (beams) *beams = inst->inst.beams;
        if (capacity) *capacity = inst->inst.capacity;
    });
}

bq_status bq_instance_write_edge_list(const bq_instance* inst, const char* path) {
    BQ_CHECK_ARG(inst);
    BQ_CHECK_ARG(path);
    return guarded([&] {
        std::ofstream f(path);
        if (!f) throw IoError(std::string("cannot write ") + path);
        write_edge_list(f, inst->inst.graph);
    });
}

void bq_instance_free(bq_instance* inst) { delete inst; }

bq_status bq_qubo_build(const bq_instance* inst, double lambda, bq_qubo** out) {
    BQ_CHECK_ARG(inst);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        QuboOptions opts;
        if (lambda > 0.0) opts.lambda = lambda;
        *out = new bq_qubo{build_qubo(inst->inst, opts).qubo};
    });
}

bq_status bq_qubo_read(const char* path, bq_qubo** out) {
    BQ_CHECK_ARG(path);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw IoError(std::string("cannot open ") + path);
        *out = new bq_qubo{read_qubo(in)};
    });
}

bq_status bq_qubo_write(const bq_qubo* q, const char* path) {
    BQ_CHECK_ARG(q);
    BQ_CHECK_ARG(path);
    return guarded([&] {
        std::ofstream f(path);
        if (!f) throw IoError(std::string("cannot write ") + path);
        write_qubo(f, q->q);
    });
}

bq_status bq_qubo_info(const bq_qubo* q, size_t* size, size_t* terms, double* offset) {
    BQ_CHECK_ARG(q);
    return guarded([&] {
        if (size) *size = q->q.size();
        if (terms) *terms = q->q.num_terms();
        if (offset) *offset = q->q.offset();
    });
}

bq_status bq_qubo_energy(const bq_qubo* q, const uint8_t* bits, size_t n, double* energy) {
    BQ_CHECK_ARG(q);
    BQ_CHECK_ARG(energy);
    if (n > 0) BQ_CHECK_ARG(bits);
    return guarded([&] { *energy = q->q.energy(std::span<const Bit>(bits, n)); });
}

void bq_qubo_free(bq_qubo* q) { delete q; }

void bq_solver_config_default(bq_solver_config* cfg) {
    if (cfg == nullptr) return;
    const AnnealSchedule s;
    *cfg = {BQ_BACKEND_SA, s.sweeps, s.reads, s.beta_initial, s.beta_final, s.seed, 1, 0, 0, 0.0,
            0};
}

bq_status bq_qubo_solve(const bq_qubo* q, const bq_solver_config* cfg, uint8_t* bits, size_t n,
                        double* energy) {
    BQ_CHECK_ARG(q);
    BQ_CHECK_ARG(cfg);
    if (n > 0) BQ_CHECK_ARG(bits);
    return guarded([&] {
        if (n != q->q.size()) throw ValidationError("output buffer does not match QUBO size");
        const PipelineOptions p = to_pipeline(*cfg);
        SampleResult res;
        switch (p.backend) {
            case Backend::Exact: res = solve_exact(q->q, p.exact); break;
            case Backend::Annealing: res = simulated_annealing(q->q, p.schedule); break;
            case Backend::Remote: res = remote_submit(q->q, p.remote); break;
        }
        const Sample& best = res.best();
        std::copy(best.bits.begin(), best.bits.end(), bits);
        if (energy) *energy = best.energy;
    });
}

bq_status bq_presolve_run(const bq_instance* inst, const bq_solver_config* cfg,
                          bq_presolve** out) {
    BQ_CHECK_ARG(inst);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        bq_solver_config defaults;
        bq_solver_config_default(&defaults);
        auto p = std::make_unique<bq_presolve>();
        p->inst = inst->inst;
        p->opts = to_presolve(cfg ? *cfg : defaults);
        p->state = presolve(p->inst, p->opts);
        if (!p->state.fully_assigned()) {
            p->reduced = std::make_unique<ReducedHamiltonian>(
                build_reduced_hamiltonian(p->state, p->inst, p->opts));
        }
        *out = p.release();
    });
}

bq_status bq_presolve_get_info(const bq_presolve* p, bq_presolve_info* info) {
    BQ_CHECK_ARG(p);
    BQ_CHECK_ARG(info);
    return guarded([&] {
        const auto& st = p->state;
        info->independent_set = st.independent_set.size();
        info->active_beams = st.active_beams;
        info->unassigned_users = st.unassigned.size();
        info->assigned_users = st.users - st.unassigned.size();
        info->extra_beam_budget = st.extra_beam_budget;
        info->lp_lower_bound = st.lp_lower_bound;
        info->qubits = qubit_count(st.users, st.beams, st.capacity);
        info->reduced_qubits = p->reduced ? p->reduced->num_free() : 0;
        info->reduction_ratio = reduction_ratio(info->qubits, info->reduced_qubits);
    });
}

bq_status bq_presolve_report(const bq_presolve* p, char* buf, size_t cap, size_t* needed) {
    BQ_CHECK_ARG(p);
    return guarded([&] {
        const std::optional<std::size_t> reduced =
            p->reduced ? std::optional<std::size_t>(p->reduced->num_free()) : std::nullopt;
        copy_text(presolve_report(p->state, reduced), buf, cap, needed);
    });
}

bq_status bq_presolve_reduced_qubo(const bq_presolve* p, bq_qubo** out) {
    BQ_CHECK_ARG(p);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        if (!p->reduced) throw ValidationError("every user is already assigned; nothing to reduce");
        *out = new bq_qubo{p->reduced->qubo};
    });
}

void bq_presolve_free(bq_presolve* p) { delete p; }

bq_status bq_solve(const bq_instance* inst, const bq_solver_config* cfg, bq_solution** out) {
    BQ_CHECK_ARG(inst);
    BQ_CHECK_ARG(cfg);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        const PipelineResult r = solve_pipeline(inst->inst, to_pipeline(*cfg));
        auto* s = make_solution(r.solution, r.solved_by == SolvedBy::PresolveOnly
                                                ? BQ_SOLVED_PRESOLVE
                                                : BQ_SOLVED_ANNEALER);
        s->info.qubits = r.qubits;
        s->info.reduced_qubits = r.reduced_qubits;
        s->info.lp_lower_bound = r.state.lp_lower_bound;
        s->info.energy = r.best ? r.best->energy : 0.0;
        *out = s;
    });
}

bq_status bq_best_fit(const bq_instance* inst, int shuffle, uint64_t shuffle_seed,
                      bq_solution** out) {
    BQ_CHECK_ARG(inst);
    BQ_CHECK_ARG(out);
    return guarded([&] {
        BeamSolution sol = shuffle ? best_fit(inst->inst,
                                              shuffled_order(inst->inst.users(), shuffle_seed))
                                   : best_fit(inst->inst);
        auto* s = make_solution(std::move(sol), BQ_SOLVED_BASELINE);
        s->info.qubits = qubit_count(inst->inst.users(), inst->inst.beams, inst->inst.capacity);
        *out = s;
    });
}

bq_status bq_solution_get_info(const bq_solution* s, bq_solution_info* info) {
    BQ_CHECK_ARG(s);
    BQ_CHECK_ARG(info);
    *info = s->info;
    g_error.clear();
    return BQ_OK;
}

bq_status bq_solution_beam_of(const bq_solution* s, size_t user, int64_t* beam) {
    BQ_CHECK_ARG(s);
    BQ_CHECK_ARG(beam);
    return guarded([&] {
        if (user >= s->sol.users) throw ValidationError("user index out of range");
        const auto b = s->sol.beam_of(user);
        *beam = b ? static_cast<int64_t>(*b) : -1;
    });
}

bq_status bq_solution_violations(const bq_solution* s, char* buf, size_t cap, size_t* needed) {
    BQ_CHECK_ARG(s);
    return guarded([&] {
        std::string text;
        for (const auto& v : s->sol.violations) text += v.to_string() + "\n";
        copy_text(text, buf, cap, needed);
    });
}

void bq_solution_free(bq_solution* s) { delete s; }

void bq_bench_config_default(bq_bench_config* cfg) {
    if (cfg == nullptr) return;
    const ExperimentConfig e;
    *cfg = bq_bench_config{};
    cfg->user_counts = nullptr;
    cfg->num_user_counts = 0;
    cfg->realizations = 1;
    bq_geometry_default(&cfg->geometry);
    cfg->capacity = e.capacity;
    cfg->beams = 0;
    cfg->ais_path = nullptr;
    const BoundingBox b = BoundingBox::gulf_of_mexico();
    cfg->bbox[0] = b.west;
    cfg->bbox[1] = b.south;
    cfg->bbox[2] = b.east;
    cfg->bbox[3] = b.north;
    cfg->clusters = e.clusters;
    cfg->spread_deg = e.spread_deg;
    cfg->master_seed = 0;
    cfg->threads = 1;
    bq_solver_config_default(&cfg->solver);
    cfg->out_dir = nullptr;
}

bq_status bq_bench_run(const bq_bench_config* cfg, bq_bench_summary* summary) {
    BQ_CHECK_ARG(cfg);
    if (cfg->num_user_counts > 0) BQ_CHECK_ARG(cfg->user_counts);
    return guarded([&] {
        ExperimentConfig e;
        e.user_counts.assign(cfg->user_counts, cfg->user_counts + cfg->num_user_counts);
        e.realizations = cfg->realizations;
        e.satellite = {cfg->geometry.satellite_lat_deg, cfg->geometry.satellite_lon_deg,
                       cfg->geometry.satellite_alt_km};
        e.alpha_deg = cfg->geometry.alpha_deg;
        e.capacity = cfg->capacity;
        if (cfg->beams > 0) e.beams = cfg->beams;
        e.pipeline = to_pipeline(cfg->solver);
        if (cfg->ais_path) e.ais_path = std::string(cfg->ais_path);
        e.bbox = to_bbox(cfg->bbox);
        e.clusters = cfg->clusters;
        e.spread_deg = cfg->spread_deg;
        e.master_seed = cfg->master_seed;
        e.threads = cfg->threads == 0 ? 1 : cfg->threads;

        const auto records = run_experiment(e);
        if (cfg->out_dir) write_experiment(cfg->out_dir, records);
        if (summary) {
            *summary = bq_bench_summary{};
            summary->realizations = records.size();
            std::vector<double> ratios;
            for (const auto& r : records) {
                summary->feasible += r.feasible;
                summary->presolve_only += r.solved_by == SolvedBy::PresolveOnly;
                summary->annealer += r.solved_by == SolvedBy::Annealer;
                summary->failed += r.solved_by == SolvedBy::Failed;
                summary->bound_exceptions += r.bound_exception;
                summary->best_fit_feasible += r.best_fit_feasible;
                if (r.solved_by != SolvedBy::Failed) ratios.push_back(r.reduction_ratio);
            }
            summary->success_probability =
                static_cast<double>(summary->feasible) / static_cast<double>(records.size());
            summary->median_reduction_ratio = ratios.empty() ? 0.0 : quantile(ratios, 0.5);
        }
    });
}

}  // extern "C"
