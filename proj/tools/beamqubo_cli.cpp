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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beamqubo/beamqubo.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

/// Carries a failed status out of a subcommand.
struct Failure {
    bq_status status;
    std::string message;
};

void check(bq_status st) {
    if (st != BQ_OK) throw Failure{st, bq_last_error_message()};
}

int exit_code(bq_status st) {
    switch (st) {
        case BQ_ERR_VALIDATION:
        case BQ_ERR_NULL_ARGUMENT:
        case BQ_ERR_IO: return kExitConfig;
        default: return kExitRuntime;
    }
}

std::vector<double> parse_bbox(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw Failure{BQ_ERR_VALIDATION, "bad --bbox value: " + text};
        }
    }
    if (v.size() != 4) throw Failure{BQ_ERR_VALIDATION, "--bbox needs w,s,e,n"};
    return v;
}

struct InstanceArgs {
    std::size_t users = 20;
    std::size_t clusters = 0;
    double spread_deg = -1.0;
    std::string edges;
    std::string ais;
    std::string bbox = "-98,18,-81,31";
    std::uint64_t seed = 0;
    double alpha_deg = 5.0;
    std::size_t capacity = 20;
    std::size_t beams = 0;
    double sat_lat = 0.0, sat_lon = 0.0, sat_alt = 0.0;

    void attach(CLI::App* app) {
        bq_geometry g;
        bq_geometry_default(&g);
        sat_lat = g.satellite_lat_deg;
        sat_lon = g.satellite_lon_deg;
        sat_alt = g.satellite_alt_km;
        app->add_option("--users", users, "Number of users (sampled from --ais, else synthetic)")
            ->capture_default_str();
        app->add_option("--clusters", clusters, "Synthetic cluster count");
        app->add_option("--spread-deg", spread_deg, "Synthetic cluster radius in degrees");
        app->add_option("--edges", edges, "Read the proximity graph from an edge list");
        app->add_option("--ais", ais, "Vessel CSV with MMSI, LAT, LON columns");
        app->add_option("--bbox", bbox, "Bounding box w,s,e,n in degrees")->capture_default_str();
        app->add_option("--seed", seed, "Seed for sampling and synthesis")->capture_default_str();
        app->add_option("--alpha-deg", alpha_deg, "Beam cone angle in degrees")
            ->capture_default_str();
        app->add_option("--capacity", capacity, "Users per beam W")->capture_default_str();
        app->add_option("--beams", beams, "Beam budget B (0: one per user)")
            ->capture_default_str();
        app->add_option("--sat-lat", sat_lat, "Satellite latitude")->capture_default_str();
        app->add_option("--sat-lon", sat_lon, "Satellite longitude")->capture_default_str();
        app->add_option("--sat-alt-km", sat_alt, "Satellite altitude")->capture_default_str();
    }

    bq_geometry geometry() const { return {sat_lat, sat_lon, sat_alt, alpha_deg}; }

    bq_instance* make() const {
        bq_instance* inst = nullptr;
        if (!edges.empty()) {
            check(bq_instance_read_edge_list(edges.c_str(), beams, capacity, &inst));
            return inst;
        }
        const auto box = parse_bbox(bbox);
        const bq_geometry g = geometry();
        if (!ais.empty()) {
            std::size_t skipped = 0;
            check(bq_instance_from_ais(ais.c_str(), box.data(), users, seed, &g, beams, capacity,
                                       &inst, &skipped));
            if (skipped > 0) std::cerr << "warning: skipped " << skipped << " unparseable rows\n";
            return inst;
        }
        bq_synthetic syn;
        bq_synthetic_default(&syn);
        syn.users = users;
        syn.seed = seed;
        if (clusters > 0) syn.clusters = clusters;
        if (spread_deg >= 0.0) syn.spread_deg = spread_deg;
        for (int k = 0; k < 4; ++k) syn.bbox[k] = box[k];
        check(bq_instance_synthetic(&syn, &g, beams, capacity, &inst));
        return inst;
    }
};

struct SolverArgs {
    std::string backend = "sa";
    bq_solver_config cfg{};

    void attach(CLI::App* app, bool with_backend, bool with_threads = true) {
        bq_solver_config_default(&cfg);
        if (with_backend) {
            app->add_option("--backend", backend, "exact, sa or remote")
                ->check(CLI::IsMember({"exact", "sa", "remote"}))
                ->capture_default_str();
            app->add_option("--sweeps", cfg.sweeps, "Annealing sweeps")->capture_default_str();
            app->add_option("--reads", cfg.reads, "Annealing reads")->capture_default_str();
            app->add_option("--beta-initial", cfg.beta_initial)->capture_default_str();
            app->add_option("--beta-final", cfg.beta_final)->capture_default_str();
            app->add_option("--sa-seed", cfg.seed, "Annealer seed")->capture_default_str();
            if (with_threads) {
                app->add_option("--threads", cfg.threads, "Annealing threads")
                    ->capture_default_str();
            }
            app->add_option("--timeout-ms", cfg.timeout_ms, "Remote request timeout");
        }
        app->add_flag("--allow-active-beam-join", cfg.allow_active_beam_join,
                      "Let unassigned users join partly filled active beams");
        app->add_option("--max-free", cfg.max_free_variables,
                        "Refuse reduced problems larger than this (0: no limit)");
        app->add_option("--lambda", cfg.lambda, "Penalty weight (default B + 1)");
    }

    bq_solver_config resolved() const {
        bq_solver_config c = cfg;
        c.backend = backend == "exact" ? BQ_BACKEND_EXACT
                    : backend == "remote" ? BQ_BACKEND_REMOTE
                                          : BQ_BACKEND_SA;
        return c;
    }
};

std::string report_text(const bq_presolve* p) {
    std::size_t needed = 0;
    check(bq_presolve_report(p, nullptr, 0, &needed));
    std::string buf(needed, '\0');
    check(bq_presolve_report(p, buf.data(), buf.size(), &needed));
    buf.resize(needed - 1);
    return buf;
}

std::string violations_text(const bq_solution* s) {
    std::size_t needed = 0;
    check(bq_solution_violations(s, nullptr, 0, &needed));
    std::string buf(needed, '\0');
    check(bq_solution_violations(s, buf.data(), buf.size(), &needed));
    buf.resize(needed - 1);
    return buf;
}

void print_solution(const char* label, const bq_solution* s, bool assignment) {
    bq_solution_info info;
    check(bq_solution_get_info(s, &info));
    static const char* kBy[] = {"presolve", "annealer", "failed", "baseline"};
    std::cout << label << "_objective: " << info.objective << '\n'
              << label << "_feasible: " << (info.feasible ? "true" : "false") << '\n'
              << label << "_solved_by: " << kBy[info.solved_by] << '\n';
    if (info.solved_by != BQ_SOLVED_BASELINE) {
        std::cout << label << "_qubits: " << info.qubits << '\n'
                  << label << "_reduced_qubits: " << info.reduced_qubits << '\n'
                  << label << "_lp_lower_bound: " << info.lp_lower_bound << '\n';
    }
    const std::string v = violations_text(s);
    if (!v.empty()) std::cout << v;
    if (assignment) {
        for (std::size_t u = 0; u < info.users; ++u) {
            std::int64_t b = -1;
            check(bq_solution_beam_of(s, u, &b));
            std::cout << "assign " << u << ' ' << b << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beam placement with a presolved clique-cover QUBO"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bq_version()));

    InstanceArgs build_inst, pre_inst, solve_inst;
    SolverArgs pre_solver, solve_solver, bench_solver;

    auto* build = app.add_subcommand("build", "Build the full QUBO of an instance");
    build_inst.attach(build);
    std::string build_out, build_graph;
    double build_lambda = 0.0;
    build->add_option("--out", build_out, "Write the QUBO here");
    build->add_option("--write-graph", build_graph, "Write the proximity graph here");
    build->add_option("--lambda", build_lambda, "Penalty weight (default B + 1)");

    auto* pre = app.add_subcommand("presolve", "Presolve an instance and report");
    pre_inst.attach(pre);
    pre_solver.attach(pre, false);
    std::string pre_out;
    pre->add_option("--out", pre_out, "Write the reduced QUBO here");

    auto* solve = app.add_subcommand("solve", "Solve one instance or a QUBO file");
    solve_inst.attach(solve);
    solve_solver.attach(solve, true);
    std::string solve_qubo;
    bool solve_assign = false, solve_baseline = false;
    std::optional<std::uint64_t> shuffle_seed;
    solve->add_option("--qubo", solve_qubo, "Minimise this QUBO file instead of an instance");
    solve->add_flag("--assignment", solve_assign, "Print the user-to-beam assignment");
    solve->add_flag("--baseline", solve_baseline, "Also run Best Fit");
    solve->add_option("--shuffle-seed", shuffle_seed, "Best Fit over a seeded user order");

    auto* bench = app.add_subcommand("bench", "Run seeded realizations and write reports");
    std::vector<std::size_t> bench_users{100};
    std::size_t realizations = 10, bench_threads = 1, bench_clusters = 0;
    double bench_spread = -1.0;
    std::string bench_out, bench_ais, bench_bbox = "-98,18,-81,31";
    std::uint64_t bench_seed = 0;
    bq_bench_config bcfg;
    bq_bench_config_default(&bcfg);
    bench->add_option("--users", bench_users, "User counts to sweep")->capture_default_str();
    bench->add_option("--realizations", realizations)->capture_default_str();
    bench->add_option("--alpha-deg", bcfg.geometry.alpha_deg)->capture_default_str();
    bench->add_option("--capacity", bcfg.capacity)->capture_default_str();
    bench->add_option("--beams", bcfg.beams, "Beam budget (0: one per user)")
        ->capture_default_str();
    bench->add_option("--ais", bench_ais, "Vessel CSV; synthetic users when absent");
    bench->add_option("--bbox", bench_bbox, "w,s,e,n")->capture_default_str();
    bench->add_option("--clusters", bench_clusters, "Synthetic cluster count");
    bench->add_option("--spread-deg", bench_spread, "Synthetic cluster radius in degrees");
    bench->add_option("--seed", bench_seed, "Master seed")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->required();
    bench->add_option("--threads", bench_threads, "Realizations in parallel")
        ->capture_default_str();
    bench_solver.attach(bench, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*build) {
            bq_instance* inst = build_inst.make();
            std::size_t n = 0, m = 0, b = 0, w = 0;
            check(bq_instance_info(inst, &n, &m, &b, &w));
            bq_qubo* q = nullptr;
            const bq_status st = bq_qubo_build(inst, build_lambda, &q);
            if (st == BQ_OK && !build_graph.empty()) {
                check(bq_instance_write_edge_list(inst, build_graph.c_str()));
            }
            bq_instance_free(inst);
            check(st);
            std::size_t size = 0, terms = 0;
            double offset = 0.0;
            check(bq_qubo_info(q, &size, &terms, &offset));
            std::cout << "users: " << n << "\nedges: " << m << "\nbeams: " << b
                      << "\ncapacity: " << w << "\nqubits: " << size << "\nterms: " << terms
                      << "\noffset: " << offset << '\n';
            const bq_status wst = build_out.empty() ? BQ_OK : bq_qubo_write(q, build_out.c_str());
            bq_qubo_free(q);
            check(wst);
        } else if (*pre) {
            bq_instance* inst = pre_inst.make();
            bq_presolve* p = nullptr;
            const bq_solver_config c = pre_solver.resolved();
            const bq_status st = bq_presolve_run(inst, &c, &p);
            bq_instance_free(inst);
            check(st);
            std::cout << report_text(p);
            if (!pre_out.empty()) {
                bq_qubo* q = nullptr;
                bq_status qs = bq_presolve_reduced_qubo(p, &q);
                if (qs == BQ_OK) qs = bq_qubo_write(q, pre_out.c_str());
                bq_qubo_free(q);
                bq_presolve_free(p);
                check(qs);
            } else {
                bq_presolve_free(p);
            }
        } else if (*solve) {
            const bq_solver_config c = solve_solver.resolved();
            if (!solve_qubo.empty()) {
                bq_qubo* q = nullptr;
                check(bq_qubo_read(solve_qubo.c_str(), &q));
                std::size_t size = 0;
                bq_qubo_info(q, &size, nullptr, nullptr);
                std::vector<std::uint8_t> bits(size);
                double energy = 0.0;
                const bq_status st = bq_qubo_solve(q, &c, bits.data(), bits.size(), &energy);
                bq_qubo_free(q);
                check(st);
                std::printf("energy: %.17g\nbits: ", energy);
                for (auto bit : bits) std::putchar(bit ? '1' : '0');
                std::putchar('\n');
            } else {
                bq_instance* inst = solve_inst.make();
                bq_solution* s = nullptr;
                bq_status st = bq_solve(inst, &c, &s);
                bq_solution* bf = nullptr;
                if (st == BQ_OK && (solve_baseline || shuffle_seed)) {
                    st = bq_best_fit(inst, shuffle_seed ? 1 : 0, shuffle_seed.value_or(0), &bf);
                }
                bq_instance_free(inst);
                if (st != BQ_OK) {
                    bq_solution_free(s);
                    check(st);
                }
                print_solution("qa", s, solve_assign);
                if (bf) print_solution("best_fit", bf, false);
                bq_solution_free(s);
                bq_solution_free(bf);
            }
        } else if (*bench) {
            bcfg.user_counts = bench_users.data();
            bcfg.num_user_counts = bench_users.size();
            bcfg.realizations = realizations;
            if (!bench_ais.empty()) bcfg.ais_path = bench_ais.c_str();
            const auto box = parse_bbox(bench_bbox);
            for (int k = 0; k < 4; ++k) bcfg.bbox[k] = box[k];
            if (bench_clusters > 0) bcfg.clusters = bench_clusters;
            if (bench_spread >= 0.0) bcfg.spread_deg = bench_spread;
            bcfg.master_seed = bench_seed;
            bcfg.threads = bench_threads;
            bcfg.solver = bench_solver.resolved();
            bcfg.out_dir = bench_out.c_str();
            bq_bench_summary sum;
            check(bq_bench_run(&bcfg, &sum));
            std::cout << "realizations: " << sum.realizations << "\nfeasible: " << sum.feasible
                      << "\nsuccess_probability: " << sum.success_probability
                      << "\npresolve_only: " << sum.presolve_only
                      << "\nannealer: " << sum.annealer << "\nfailed: " << sum.failed
                      << "\nbound_exceptions: " << sum.bound_exceptions
                      << "\nbest_fit_feasible: " << sum.best_fit_feasible
                      << "\nmedian_reduction_ratio: " << sum.median_reduction_ratio
                      << "\noutput: " << bench_out << '\n';
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << bq_status_string(f.status) << ": " << f.message << '\n';
        return exit_code(f.status);
    }
    return 0;
}
