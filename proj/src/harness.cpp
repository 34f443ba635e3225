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

#include "beamqubo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "beamqubo/errors.hpp"
#include "beamqubo/rng.hpp"
#include "json.hpp"

namespace beamqubo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// One CSV record; doubled quotes inside quoted fields.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

// ---------------------------------------------------------------------------

void BoundingBox::validate() const {
    const bool ok = std::isfinite(west) && std::isfinite(east) && std::isfinite(south) &&
                    std::isfinite(north) && west >= -180.0 && east <= 180.0 && west < east &&
                    south >= -90.0 && north <= 90.0 && south < north;
    if (!ok) throw ValidationError("invalid bounding box");
}

bool BoundingBox::contains(double lat, double lon) const noexcept {
    return lat >= south && lat <= north && lon >= west && lon <= east;
}

BoundingBox BoundingBox::parse(const std::string& text) {
    const auto parts = split_csv(text);
    if (parts.size() != 4) throw ValidationError("bbox must be w,s,e,n: " + text);
    double v[4];
    for (int k = 0; k < 4; ++k) {
        if (!parse_double(parts[k], v[k])) throw ValidationError("bbox must be w,s,e,n: " + text);
    }
    BoundingBox b{v[0], v[1], v[2], v[3]};
    b.validate();
    return b;
}

AisLoadResult read_ais_csv(std::istream& in, const BoundingBox& bbox) {
    bbox.validate();
    AisLoadResult res;
    std::string line;
    if (!std::getline(in, line)) return res;
    const auto header = split_csv(line);
    std::optional<std::size_t> id_col, lat_col, lon_col;
    for (std::size_t k = 0; k < header.size(); ++k) {
        const std::string h = upper(header[k]);
        if (!id_col && (h == "MMSI" || h == "VESSEL_ID" || h == "ID")) id_col = k;
        if (!lat_col && (h == "LAT" || h == "LATITUDE")) lat_col = k;
        if (!lon_col && (h == "LON" || h == "LONGITUDE")) lon_col = k;
    }
    std::string missing;
    if (!id_col) missing += " MMSI";
    if (!lat_col) missing += " LAT";
    if (!lon_col) missing += " LON";
    if (!missing.empty()) throw FormatError("AIS file is missing columns:" + missing);
    const std::size_t need = std::max({*id_col, *lat_col, *lon_col}) + 1;

    std::set<std::string> seen;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = split_csv(line);
        double lat = 0.0, lon = 0.0;
        if (f.size() < need || f[*id_col].empty() || !parse_double(f[*lat_col], lat) ||
            !parse_double(f[*lon_col], lon) || std::abs(lat) > 90.0 || std::abs(lon) > 180.0) {
            ++res.skipped;
            continue;
        }
        if (!bbox.contains(lat, lon)) continue;
        if (!seen.insert(f[*id_col]).second) continue;
        res.users.users.push_back({f[*id_col], {lat, lon, 0.0}});
    }
    return res;
}

AisLoadResult load_ais_csv(const std::string& path, const BoundingBox& bbox) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_ais_csv(in, bbox);
}

UserSet synthesize_users(std::size_t n, std::size_t clusters, double spread_deg,
                         std::uint64_t seed, const BoundingBox& bbox) {
    if (n == 0) throw ValidationError("need at least one user");
    if (clusters == 0) throw ValidationError("need at least one cluster");
    if (!(spread_deg >= 0.0) || !std::isfinite(spread_deg)) {
        throw ValidationError("spread must be finite and non-negative");
    }
    bbox.validate();
    std::mt19937_64 rng(splitmix64(seed));
    auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * unit_double(rng); };

    std::vector<GeoPoint> centres;
    for (std::size_t c = 0; c < clusters; ++c) {
        const double lat = uniform(bbox.south, bbox.north);
        const double lon = uniform(bbox.west, bbox.east);
        centres.push_back({lat, lon, 0.0});
    }
    UserSet out;
    for (std::size_t k = 0; k < n; ++k) {
        const GeoPoint& c = centres[k % clusters];
        GeoPoint p = c;
        if (k >= clusters && spread_deg > 0.0) {
            const double r = spread_deg * std::sqrt(unit_double(rng));
            const double theta = 2.0 * kPi * unit_double(rng);
            p.latitude_deg = std::clamp(c.latitude_deg + r * std::cos(theta), -90.0, 90.0);
            const double coslat = std::max(std::cos(deg_to_rad(c.latitude_deg)), 1e-6);
            double lon = c.longitude_deg + r * std::sin(theta) / coslat;
            if (lon > 180.0) lon -= 360.0;
            if (lon < -180.0) lon += 360.0;
            p.longitude_deg = lon;
        }
        out.users.push_back({"syn-" + std::to_string(k), p});
    }
    return out;
}

UserSet sample_users(const UserSet& pool, std::size_t n, std::uint64_t seed) {
    if (n > pool.size()) {
        throw ValidationError("cannot sample " + std::to_string(n) + " users from " +
                              std::to_string(pool.size()));
    }
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(splitmix64(seed));
    for (std::size_t k = 0; k < n; ++k) {
        const auto span = static_cast<double>(idx.size() - k);
        const std::size_t j = k + std::min(static_cast<std::size_t>(unit_double(rng) * span),
                                           idx.size() - k - 1);
        std::swap(idx[k], idx[j]);
    }
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    UserSet out;
    for (std::size_t k : idx) out.users.push_back(pool.users[k]);
    return out;
}

ProblemInstance make_instance(const UserSet& users, const SatelliteGeometry& sat,
                              std::size_t beams, std::size_t capacity) {
    ProblemInstance inst{build_proximity_graph(users, sat), beams, capacity};
    inst.validate();
    return inst;
}

// ---------------------------------------------------------------------------

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Exact: return "exact";
        case Backend::Annealing: return "sa";
        case Backend::Remote: return "remote";
    }
    return "?";
}

Backend parse_backend(const std::string& name) {
    if (name == "exact") return Backend::Exact;
    if (name == "sa") return Backend::Annealing;
    if (name == "remote") return Backend::Remote;
    throw ValidationError("unknown backend '" + name + "' (exact, sa, remote)");
}

std::string solved_by_name(SolvedBy s) {
    switch (s) {
        case SolvedBy::PresolveOnly: return "presolve";
        case SolvedBy::Annealer: return "annealer";
        case SolvedBy::Failed: return "failed";
    }
    return "?";
}

PipelineResult solve_pipeline(const ProblemInstance& inst, const PipelineOptions& opts) {
    PipelineResult out;
    out.qubits = qubit_count(inst.users(), inst.beams, inst.capacity);
    const auto t0 = Clock::now();
    out.state = presolve(inst, opts.presolve);
    out.presolve_s = seconds_since(t0);
    if (out.state.fully_assigned()) {
        out.solution = solution_from_state(out.state, inst);
        out.solved_by = SolvedBy::PresolveOnly;
        return out;
    }

    const auto t1 = Clock::now();
    const ReducedHamiltonian red = build_reduced_hamiltonian(out.state, inst, opts.presolve);
    out.reduced_qubits = red.num_free();
    SampleResult res;
    switch (opts.backend) {
        case Backend::Exact: res = solve_exact(red.qubo, opts.exact); break;
        case Backend::Annealing: res = simulated_annealing(red.qubo, opts.schedule); break;
        case Backend::Remote: res = remote_submit(red.qubo, opts.remote); break;
    }
    out.best = res.best();
    out.solution = merge(red, inst, out.best->bits);
    out.solved_by = SolvedBy::Annealer;
    out.solve_s = seconds_since(t1);
    return out;
}

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (user_counts.empty()) throw ValidationError("no user counts given");
    for (auto n : user_counts) {
        if (n == 0) throw ValidationError("user counts must be positive");
    }
    if (realizations == 0) throw ValidationError("realizations must be at least 1");
    if (!alpha_deg) throw ValidationError("the cone angle alpha must be given");
    if (capacity == 0) throw ValidationError("capacity must be positive");
    if (beams && *beams == 0) throw ValidationError("beam budget must be positive");
    if (clusters == 0) throw ValidationError("clusters must be positive");
    bbox.validate();
    geometry().validate();
    if (pipeline.backend == Backend::Annealing) pipeline.schedule.validate();
}

SatelliteGeometry ExperimentConfig::geometry() const {
    return {satellite, deg_to_rad(alpha_deg.value_or(0.0))};
}

std::uint64_t realization_seed(std::uint64_t master, std::size_t index) {
    return derive_seed(master, index);
}

RealizationRecord run_realization(const ExperimentConfig& cfg, std::size_t users,
                                  std::size_t index, const UserSet* pool) {
    const auto t0 = Clock::now();
    RealizationRecord rec;
    rec.index = index;
    rec.seed = realization_seed(cfg.master_seed, index);
    rec.users = users;
    rec.beams = cfg.beams.value_or(users);
    rec.capacity = cfg.capacity;
    rec.qubits = qubit_count(users, rec.beams, rec.capacity);
    try {
        const UserSet us = pool ? sample_users(*pool, users, rec.seed)
                                : synthesize_users(users, cfg.clusters, cfg.spread_deg, rec.seed,
                                                   cfg.bbox);
        const ProblemInstance inst = make_instance(us, cfg.geometry(), rec.beams, rec.capacity);

        const auto tb = Clock::now();
        try {
            const BeamSolution bf = best_fit(inst);
            rec.objective_best_fit = bf.objective;
            rec.best_fit_feasible = bf.feasible();
        } catch (const BudgetExhaustedError&) {
            rec.best_fit_feasible = false;
        }
        rec.best_fit_s = seconds_since(tb);

        PipelineOptions popts = cfg.pipeline;
        popts.schedule.seed = derive_seed(rec.seed, 1);
        popts.schedule.threads = 1;
        const PipelineResult pr = solve_pipeline(inst, popts);
        rec.lp_lower_bound = pr.state.lp_lower_bound;
        rec.reduced_qubits = pr.reduced_qubits;
        rec.reduction_ratio = reduction_ratio(rec.qubits, rec.reduced_qubits);
        rec.solved_by = pr.solved_by;
        rec.feasible = pr.solution.feasible();
        rec.objective_qa = pr.solution.objective;
        rec.presolve_s = pr.presolve_s;
        rec.solve_s = pr.solve_s;
    } catch (const std::exception& e) {
        rec.solved_by = SolvedBy::Failed;
        rec.feasible = false;
        rec.objective_qa.reset();
        rec.error = e.what();
    }

    constexpr double kTol = 1e-6;
    if (rec.objective_best_fit &&
        static_cast<double>(*rec.objective_best_fit) < rec.lp_lower_bound - kTol) {
        rec.bound_exception = true;
    }
    if (rec.feasible && rec.objective_qa) {
        const auto qa = static_cast<double>(*rec.objective_qa);
        if (qa < rec.lp_lower_bound - kTol) rec.bound_exception = true;
        if (rec.objective_best_fit && *rec.objective_qa > *rec.objective_best_fit) {
            rec.bound_exception = true;
        }
    }
    rec.total_s = seconds_since(t0);
    return rec;
}

std::vector<RealizationRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::optional<UserSet> pool;
    if (cfg.ais_path) pool = load_ais_csv(*cfg.ais_path, cfg.bbox).users;

    std::vector<std::size_t> counts;
    for (auto n : cfg.user_counts) counts.insert(counts.end(), cfg.realizations, n);
    std::vector<RealizationRecord> records(counts.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < counts.size(); k = next++) {
            records[k] = run_realization(cfg, counts[k], k, pool ? &*pool : nullptr);
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, counts.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool_threads;
        for (std::size_t t = 0; t < workers; ++t) pool_threads.emplace_back(work);
        for (auto& th : pool_threads) th.join();
    }
    return records;
}

// ---------------------------------------------------------------------------

void write_records_csv(std::ostream& out, const std::vector<RealizationRecord>& records) {
    out << "# reduction_ratio = 1 - reduced_qubits/qubits; fully presolved realizations "
           "report reduced_qubits = 0 and reduction_ratio = 1\n";
    out << "index,seed,users,beams,capacity,qubits,reduced_qubits,reduction_ratio,solved_by,"
           "feasible,objective_qa,objective_best_fit,best_fit_feasible,lp_lower_bound,"
           "bound_exception,error\n";
    auto opt = [](const std::optional<std::size_t>& v) {
        return v ? std::to_string(*v) : std::string{};
    };
    for (const auto& r : records) {
        out << r.index << ',' << r.seed << ',' << r.users << ',' << r.beams << ',' << r.capacity
            << ',' << r.qubits << ',' << r.reduced_qubits << ',' << fmt_double(r.reduction_ratio)
            << ',' << solved_by_name(r.solved_by) << ',' << (r.feasible ? 1 : 0) << ','
            << opt(r.objective_qa) << ',' << opt(r.objective_best_fit) << ','
            << (r.best_fit_feasible ? 1 : 0) << ',' << fmt_double(r.lp_lower_bound) << ','
            << (r.bound_exception ? 1 : 0) << ',' << csv_field(r.error) << '\n';
    }
}

void write_timings_csv(std::ostream& out, const std::vector<RealizationRecord>& records) {
    out << "index,presolve_s,solve_s,best_fit_s,total_s\n";
    for (const auto& r : records) {
        out << r.index << ',' << fmt_double(r.presolve_s) << ',' << fmt_double(r.solve_s) << ','
            << fmt_double(r.best_fit_s) << ',' << fmt_double(r.total_s) << '\n';
    }
}

double quantile(std::vector<double> data, double p) {
    if (data.empty()) throw ValidationError("quantile of empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile level outside [0, 1]");
    std::sort(data.begin(), data.end());
    const double h = p * static_cast<double>(data.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, data.size() - 1);
    return data[lo] + (h - static_cast<double>(lo)) * (data[hi] - data[lo]);
}

std::string summarize(const std::vector<RealizationRecord>& records) {
    using nlohmann::ordered_json;
    std::map<std::size_t, std::vector<const RealizationRecord*>> groups;
    for (const auto& r : records) groups[r.users].push_back(&r);

    ordered_json out;
    out["realizations"] = records.size();
    ordered_json arr = ordered_json::array();
    for (const auto& [n, rs] : groups) {
        std::size_t feasible = 0, presolved = 0, annealed = 0, failed = 0, bf_feasible = 0;
        std::size_t exceptions = 0, qa_le_bf = 0, annealed_feasible = 0;
        std::vector<double> ratios;
        double qa_sum = 0.0, bf_sum = 0.0, lp_sum = 0.0;
        std::size_t qa_n = 0, bf_n = 0;
        for (const auto* r : rs) {
            feasible += r->feasible;
            bf_feasible += r->best_fit_feasible;
            exceptions += r->bound_exception;
            lp_sum += r->lp_lower_bound;
            switch (r->solved_by) {
                case SolvedBy::PresolveOnly: ++presolved; break;
                case SolvedBy::Annealer: ++annealed; break;
                case SolvedBy::Failed: ++failed; break;
            }
            if (r->solved_by != SolvedBy::Failed) ratios.push_back(r->reduction_ratio);
            if (r->feasible && r->objective_qa) {
                qa_sum += static_cast<double>(*r->objective_qa);
                ++qa_n;
            }
            if (r->objective_best_fit) {
                bf_sum += static_cast<double>(*r->objective_best_fit);
                ++bf_n;
            }
            if (r->solved_by == SolvedBy::Annealer && r->feasible) {
                ++annealed_feasible;
                if (r->objective_best_fit && r->objective_qa &&
                    *r->objective_qa <= *r->objective_best_fit) {
                    ++qa_le_bf;
                }
            }
        }
        const auto count = static_cast<double>(rs.size());
        ordered_json g;
        g["users"] = n;
        g["realizations"] = rs.size();
        g["feasible"] = feasible;
        g["success_probability"] = static_cast<double>(feasible) / count;
        g["solved_by"] = {{"presolve", presolved}, {"annealer", annealed}, {"failed", failed}};
        if (!ratios.empty()) {
            g["reduction_ratio"] = {{"min", quantile(ratios, 0.0)},
                                    {"q1", quantile(ratios, 0.25)},
                                    {"median", quantile(ratios, 0.5)},
                                    {"q3", quantile(ratios, 0.75)},
                                    {"max", quantile(ratios, 1.0)}};
        }
        g["mean_objective_qa"] = qa_n ? qa_sum / static_cast<double>(qa_n) : 0.0;
        g["mean_objective_best_fit"] = bf_n ? bf_sum / static_cast<double>(bf_n) : 0.0;
        g["mean_lp_lower_bound"] = lp_sum / count;
        g["best_fit_feasible"] = bf_feasible;
        g["annealer_feasible"] = annealed_feasible;
        g["annealer_qa_le_best_fit"] = qa_le_bf;
        g["bound_exceptions"] = exceptions;
        arr.push_back(std::move(g));
    }
    out["groups"] = std::move(arr);
    return out.dump(2) + "\n";
}

void write_experiment(const std::string& dir, const std::vector<RealizationRecord>& records) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
    auto open = [&dir](const char* name) {
        std::ofstream f(std::filesystem::path(dir) / name);
        if (!f) throw IoError("cannot write " + (std::filesystem::path(dir) / name).string());
        return f;
    };
    {
        auto f = open("records.csv");
        write_records_csv(f, records);
    }
    {
        auto f = open("timings.csv");
        write_timings_csv(f, records);
    }
    auto f = open("summary.json");
    f << summarize(records);
}

}  // namespace beamqubo
