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

#include "beamqubo/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "beamqubo/errors.hpp"
#include "beamqubo/rng.hpp"

namespace beamqubo {

const Sample& SampleResult::best() const {
    if (samples.empty()) throw ValidationError("sample result is empty");
    return samples.front();
}

void AnnealSchedule::validate() const {
    if (sweeps == 0) throw ValidationError("annealing needs at least one sweep");
    if (reads == 0) throw ValidationError("annealing needs at least one read");
    if (!(beta_initial > 0.0) || !(beta_final >= beta_initial) || !std::isfinite(beta_final)) {
        throw ValidationError("beta schedule must satisfy 0 < beta_initial <= beta_final");
    }
}

double AnnealSchedule::beta(std::size_t s) const {
    if (sweeps <= 1) return beta_final;
    const double t = static_cast<double>(s) / static_cast<double>(sweeps - 1);
    return beta_initial * std::pow(beta_final / beta_initial, t);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Diagonal plus symmetric neighbour lists of an upper-triangular QUBO.
struct Adjacency {
    std::vector<double> linear;
    std::vector<std::size_t> start;  // CSR row starts, size n + 1
    std::vector<std::size_t> nbr;
    std::vector<double> weight;

    explicit Adjacency(const QuboMatrix& q) : linear(q.size(), 0.0), start(q.size() + 1, 0) {
        for (const auto& t : q.terms()) {
            if (t.row == t.col) {
                linear[t.row] += t.value;
            } else {
                ++start[t.row + 1];
                ++start[t.col + 1];
            }
        }
        for (std::size_t i = 0; i < q.size(); ++i) start[i + 1] += start[i];
        nbr.resize(start.back());
        weight.resize(start.back());
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (const auto& t : q.terms()) {
            if (t.row == t.col) continue;
            nbr[fill[t.row]] = t.col;
            weight[fill[t.row]++] = t.value;
            nbr[fill[t.col]] = t.row;
            weight[fill[t.col]++] = t.value;
        }
    }

    std::size_t size() const noexcept { return linear.size(); }
};

}  // namespace

SampleResult collect_samples(const QuboMatrix& q, std::vector<Bitstring> reads,
                             std::string backend) {
    std::map<Bitstring, std::size_t> counts;
    for (auto& r : reads) ++counts[std::move(r)];
    SampleResult res;
    res.backend = std::move(backend);
    for (auto& [bits, n] : counts) res.samples.push_back({bits, q.energy(bits), n});
    std::stable_sort(res.samples.begin(), res.samples.end(), [](const Sample& a, const Sample& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.bits < b.bits;
    });
    return res;
}

// ---------------------------------------------------------------------------

SampleResult solve_exhaustive(const QuboMatrix& q, std::size_t cap) {
    const std::size_t n = q.size();
    if (n > cap || n > 62) {
        throw CapacityError("exhaustive search over " + std::to_string(n) +
                                " variables exceeds the cap of " + std::to_string(cap),
                            n);
    }
    const auto t0 = Clock::now();
    const Adjacency adj(q);
    std::vector<double> field(adj.linear);
    std::uint64_t x = 0;
    std::uint64_t best = 0;
    double e = q.offset();
    double best_e = e;
    constexpr double kTie = 1e-9;

    // lexicographic order with x_0 most significant: a < b iff the lowest
    // differing bit is set in b
    auto lex_less = [](std::uint64_t a, std::uint64_t b) {
        const std::uint64_t diff = a ^ b;
        return diff != 0 && (b & (diff & (~diff + 1))) != 0;
    };

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto k = static_cast<std::size_t>(std::countr_zero(step));
        const bool was_set = (x >> k) & 1u;
        e += was_set ? -field[k] : field[k];
        x ^= std::uint64_t{1} << k;
        const double sign = was_set ? -1.0 : 1.0;
        for (std::size_t p = adj.start[k]; p < adj.start[k + 1]; ++p) {
            field[adj.nbr[p]] += sign * adj.weight[p];
        }
        if (e < best_e - kTie || (e <= best_e + kTie && lex_less(x, best))) {
            best_e = std::min(e, best_e);
            best = x;
        }
    }

    Bitstring bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = (best >> i) & 1u;
    SampleResult res;
    res.backend = "exact";
    res.samples.push_back({bits, q.energy(bits), 1});
    res.wall_time_s = seconds_since(t0);
    return res;
}

namespace {

struct EliminationOrder {
    std::vector<std::size_t> order;
    std::size_t width = 0;
};

/// Greedy min-fill order; ties by smaller current degree, then lower index.
EliminationOrder min_fill_order(const QuboMatrix& q) {
    const std::size_t n = q.size();
    std::vector<std::set<std::size_t>> g(n);
    for (const auto& t : q.terms()) {
        if (t.row != t.col) {
            g[t.row].insert(t.col);
            g[t.col].insert(t.row);
        }
    }
    EliminationOrder out;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n, best_fill = 0, best_deg = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            std::size_t fill = 0;
            for (auto a = g[v].begin(); a != g[v].end(); ++a) {
                for (auto b = std::next(a); b != g[v].end(); ++b) fill += !g[*a].count(*b);
            }
            const std::size_t deg = g[v].size();
            if (best == n || fill < best_fill || (fill == best_fill && deg < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = deg;
            }
        }
        out.order.push_back(best);
        out.width = std::max(out.width, g[best].size());
        for (auto a : g[best]) {
            for (auto b : g[best]) {
                if (a != b) g[a].insert(b);
            }
            g[a].erase(best);
        }
        g[best].clear();
        done[best] = true;
    }
    return out;
}

struct Factor {
    std::vector<std::size_t> scope;  // bit t of a table index is scope[t]
    std::vector<double> table;
};

}  // namespace

std::size_t elimination_width(const QuboMatrix& q) { return min_fill_order(q).width; }

SampleResult solve_by_elimination(const QuboMatrix& q, std::size_t width_cap) {
    const auto t0 = Clock::now();
    const std::size_t n = q.size();
    const EliminationOrder eo = min_fill_order(q);
    if (eo.width > width_cap) {
        throw CapacityError("elimination width " + std::to_string(eo.width) +
                                " exceeds the cap of " + std::to_string(width_cap),
                            eo.width);
    }
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[eo.order[k]] = k;

    // Each original term lives in the bucket of whichever endpoint goes first.
    std::vector<double> linear(n, 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> pair_terms(n);
    for (const auto& t : q.terms()) {
        if (t.row == t.col) {
            linear[t.row] += t.value;
        } else {
            const bool row_first = pos[t.row] < pos[t.col];
            const std::size_t owner = row_first ? t.row : t.col;
            const std::size_t other = row_first ? t.col : t.row;
            pair_terms[owner].emplace_back(other, t.value);
        }
    }

    std::vector<Factor> factors;
    std::vector<std::vector<std::size_t>> bucket(n);  // factor ids
    struct Record {
        std::vector<std::size_t> scope;
        std::vector<std::uint8_t> argmin;
    };
    std::vector<Record> records(n);
    double constant = q.offset();

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t v = eo.order[step];
        std::vector<std::size_t> scope;
        for (const auto& [u, _] : pair_terms[v]) scope.push_back(u);
        for (std::size_t f : bucket[v]) {
            for (std::size_t u : factors[f].scope) {
                if (u != v) scope.push_back(u);
            }
        }
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        auto bit_of = [&scope](std::size_t u) {
            return static_cast<std::size_t>(std::lower_bound(scope.begin(), scope.end(), u) -
                                            scope.begin());
        };

        std::vector<std::pair<std::size_t, double>> pairs;
        for (const auto& [u, w] : pair_terms[v]) pairs.emplace_back(bit_of(u), w);
        struct MsgMap {
            const Factor* f;
            std::vector<int> src;  // per factor bit: position in scope, or -1 for v
        };
        std::vector<MsgMap> msgs;
        for (std::size_t f : bucket[v]) {
            MsgMap mm{&factors[f], {}};
            for (std::size_t u : factors[f].scope) {
                mm.src.push_back(u == v ? -1 : static_cast<int>(bit_of(u)));
            }
            msgs.push_back(std::move(mm));
        }

        const std::size_t size = std::size_t{1} << scope.size();
        Factor g{scope, std::vector<double>(size)};
        Record rec{scope, std::vector<std::uint8_t>(size)};
        for (std::size_t idx = 0; idx < size; ++idx) {
            double e0 = 0.0;
            double e1 = linear[v];
            for (const auto& [b, w] : pairs) {
                if ((idx >> b) & 1u) e1 += w;
            }
            for (const auto& mm : msgs) {
                std::size_t i0 = 0, i1 = 0;
                for (std::size_t t = 0; t < mm.src.size(); ++t) {
                    if (mm.src[t] < 0) {
                        i1 |= std::size_t{1} << t;
                    } else if ((idx >> mm.src[t]) & 1u) {
                        i0 |= std::size_t{1} << t;
                        i1 |= std::size_t{1} << t;
                    }
                }
                e0 += mm.f->table[i0];
                e1 += mm.f->table[i1];
            }
            const bool take_one = e1 < e0;
            g.table[idx] = take_one ? e1 : e0;
            rec.argmin[idx] = take_one ? 1 : 0;
        }
        for (std::size_t f : bucket[v]) {
            factors[f].table.clear();
            factors[f].table.shrink_to_fit();
        }
        records[v] = std::move(rec);

        if (scope.empty()) {
            constant += g.table[0];
        } else {
            std::size_t first = scope.front();
            for (std::size_t u : scope) {
                if (pos[u] < pos[first]) first = u;
            }
            factors.push_back(std::move(g));
            bucket[first].push_back(factors.size() - 1);
        }
    }

    Bitstring bits(n, 0);
    for (std::size_t step = n; step-- > 0;) {
        const std::size_t v = eo.order[step];
        const auto& rec = records[v];
        std::size_t idx = 0;
        for (std::size_t t = 0; t < rec.scope.size(); ++t) {
            if (bits[rec.scope[t]]) idx |= std::size_t{1} << t;
        }
        bits[v] = rec.argmin[idx];
    }

    SampleResult res;
    res.backend = "exact";
    res.samples.push_back({bits, q.energy(bits), 1});
    res.wall_time_s = seconds_since(t0);
    (void)constant;
    return res;
}

SampleResult solve_exact(const QuboMatrix& q, const ExactOptions& opts) {
    if (q.size() <= opts.enumeration_cap) return solve_exhaustive(q, opts.enumeration_cap);
    return solve_by_elimination(q, opts.width_cap);
}

// ---------------------------------------------------------------------------

namespace {

Bitstring anneal_one(const Adjacency& adj, const AnnealSchedule& sched, std::uint64_t seed) {
    const std::size_t n = adj.size();
    std::mt19937_64 rng(seed);
    Bitstring x(n);
    for (auto& b : x) b = static_cast<Bit>(rng() & 1u);

    std::vector<double> field(adj.linear);
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        for (std::size_t p = adj.start[i]; p < adj.start[i + 1]; ++p) {
            field[adj.nbr[p]] += adj.weight[p];
        }
    }

    for (std::size_t s = 0; s < sched.sweeps; ++s) {
        const double beta = sched.beta(s);
        for (std::size_t k = 0; k < n; ++k) {
            const double delta = x[k] ? -field[k] : field[k];
            if (delta > 0.0 && unit_double(rng) >= std::exp(-beta * delta)) continue;
            const double sign = x[k] ? -1.0 : 1.0;
            x[k] ^= 1u;
            for (std::size_t p = adj.start[k]; p < adj.start[k + 1]; ++p) {
                field[adj.nbr[p]] += sign * adj.weight[p];
            }
        }
    }
    return x;
}

}  // namespace

SampleResult simulated_annealing(const QuboMatrix& q, const AnnealSchedule& sched) {
    sched.validate();
    const auto t0 = Clock::now();
    const Adjacency adj(q);
    std::vector<Bitstring> reads(sched.reads);

    const std::size_t workers = std::max<std::size_t>(1, std::min(sched.threads, sched.reads));
    if (workers == 1) {
        for (std::size_t r = 0; r < sched.reads; ++r) {
            reads[r] = anneal_one(adj, sched, derive_seed(sched.seed, r));
        }
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < sched.reads; r += workers) {
                    reads[r] = anneal_one(adj, sched, derive_seed(sched.seed, r));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    auto res = collect_samples(q, std::move(reads), "sa");
    res.wall_time_s = seconds_since(t0);
    return res;
}

}  // namespace beamqubo
