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

#include "beamqubo/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include "beamqubo/errors.hpp"

namespace beamqubo {

void ProblemInstance::validate() const {
    if (graph.num_vertices() == 0) throw ValidationError("instance has no users");
    if (beams == 0) throw ValidationError("beam budget must be at least 1");
    if (capacity == 0) throw ValidationError("beam capacity must be at least 1");
}

std::size_t qubit_count(std::size_t users, std::size_t beams, std::size_t capacity) {
    return users * beams + beams + capacity * beams;
}

VariableLayout::VariableLayout(std::size_t users, std::size_t beams, std::size_t capacity)
        : n_(users), b_(beams), w_(capacity) {}

VariableLayout::Variable VariableLayout::describe(std::size_t index) const {
    if (index >= size()) {
        throw ValidationError("variable index " + std::to_string(index) + " out of range");
    }
    if (index < n_ * b_) return {Kind::Assignment, index % n_, index / n_, 0};
    index -= n_ * b_;
    if (index < b_) return {Kind::Activation, 0, index, 0};
    index -= b_;
    return {Kind::Slack, 0, index / w_, index % w_ + 1};
}

// ---------------------------------------------------------------------------

double QuboMatrix::coefficient(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{i, j},
                               [](const QuboTerm& t, const std::pair<std::size_t, std::size_t>& k) {
                                   return std::tie(t.row, t.col) < std::tie(k.first, k.second);
                               });
    if (it != terms_.end() && it->row == i && it->col == j) return it->value;
    return 0.0;
}

double QuboMatrix::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.value));
    return m;
}

double QuboMatrix::energy(std::span<const Bit> x) const {
    if (x.size() != size_) {
        throw ValidationError("bitstring length " + std::to_string(x.size()) +
                              " does not match QUBO size " + std::to_string(size_));
    }
    double e = offset_;
    for (const auto& t : terms_) {
        if (x[t.row] && x[t.col]) e += t.value;
    }
    return e;
}

std::vector<double> QuboMatrix::dense() const {
    std::vector<double> d(size_ * size_, 0.0);
    for (const auto& t : terms_) d[t.row * size_ + t.col] = t.value;
    return d;
}

void QuboBuilder::add_term(std::size_t i, std::size_t j, double value) {
    if (i >= size_ || j >= size_) {
        throw ValidationError("term (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") outside QUBO of size " + std::to_string(size_));
    }
    if (!std::isfinite(value)) throw ValidationError("non-finite QUBO coefficient");
    if (i > j) std::swap(i, j);
    pending_.push_back({i, j, value});
}

QuboMatrix QuboBuilder::build() && {
    std::sort(pending_.begin(), pending_.end(), [](const QuboTerm& a, const QuboTerm& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    QuboMatrix q;
    q.size_ = size_;
    q.offset_ = offset_;
    for (const auto& t : pending_) {
        if (!q.terms_.empty() && q.terms_.back().row == t.row && q.terms_.back().col == t.col) {
            q.terms_.back().value += t.value;
        } else {
            q.terms_.push_back(t);
        }
    }
    std::erase_if(q.terms_, [](const QuboTerm& t) { return t.value == 0.0; });
    pending_.clear();
    return q;
}

// ---------------------------------------------------------------------------

double default_lambda(const ProblemInstance& inst) { return static_cast<double>(inst.beams) + 1.0; }

namespace {

/// lambda * (sum_k c_k x_k - d)^2 expanded into diagonal, pair and constant
/// terms. `coef` and `vars` run in parallel.
void emit_squared_penalty(std::span<const std::size_t> vars, std::span<const double> coef,
                          double d, double lambda, TermSink& sink) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
        sink.add_term(vars[k], vars[k], lambda * (coef[k] * coef[k] - 2.0 * d * coef[k]));
        for (std::size_t l = k + 1; l < vars.size(); ++l) {
            sink.add_term(vars[k], vars[l], lambda * 2.0 * coef[k] * coef[l]);
        }
    }
    sink.add_offset(lambda * d * d);
}

}  // namespace

void emit_qubo_terms(const ProblemInstance& inst, const VariableLayout& layout,
                     const QuboOptions& opts, TermSink& sink) {
    const std::size_t n = inst.users();
    const std::size_t nb = inst.beams;
    const std::size_t w = inst.capacity;
    const double lambda = opts.lambda.value_or(default_lambda(inst));
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("penalty weight lambda must be positive");
    }
    if (!opts.capacity_penalty.empty() && opts.capacity_penalty.size() != nb) {
        throw ValidationError("capacity_penalty mask must have one entry per beam");
    }

    // objective: number of active beams
    for (std::size_t b = 0; b < nb; ++b) sink.add_term(layout.z_index(b), layout.z_index(b), 1.0);

    // C1: each user in exactly one beam
    {
        std::vector<std::size_t> vars(nb);
        std::vector<double> ones(nb, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t b = 0; b < nb; ++b) vars[b] = layout.a_index(i, b);
            emit_squared_penalty(vars, ones, 1.0, lambda, sink);
        }
    }

    // C2: a_ib (1 - z_b)
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            sink.add_term(layout.a_index(i, b), layout.a_index(i, b), lambda);
            sink.add_term(layout.a_index(i, b), layout.z_index(b), -lambda);
        }
    }

    // C3: complement adjacency on every beam's block; symmetric entries fold
    // to 2 per non-adjacent pair.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (inst.graph.adjacent(i, j)) continue;
            for (std::size_t b = 0; b < nb; ++b) {
                sink.add_term(layout.a_index(i, b), layout.a_index(j, b), 2.0 * lambda);
            }
        }
    }

    // C4: sum_i a_ib + sum_w w s_bw = W
    {
        std::vector<std::size_t> vars(n + w);
        std::vector<double> coef(n + w);
        for (std::size_t b = 0; b < nb; ++b) {
            if (!opts.capacity_penalty.empty() && !opts.capacity_penalty[b]) continue;
            for (std::size_t i = 0; i < n; ++i) {
                vars[i] = layout.a_index(i, b);
                coef[i] = 1.0;
            }
            for (std::size_t k = 1; k <= w; ++k) {
                vars[n + k - 1] = layout.s_index(b, k);
                coef[n + k - 1] = static_cast<double>(k);
            }
            emit_squared_penalty(vars, coef, static_cast<double>(w), lambda, sink);
        }
    }
}

BuiltQubo build_qubo(const ProblemInstance& inst, const QuboOptions& opts) {
    inst.validate();
    VariableLayout layout(inst.users(), inst.beams, inst.capacity);
    if (layout.size() > opts.max_variables) {
        throw CapacityError("QUBO would need " + std::to_string(layout.size()) +
                                " variables, limit is " + std::to_string(opts.max_variables),
                            layout.size());
    }
    QuboBuilder builder(layout.size());
    emit_qubo_terms(inst, layout, opts, builder);
    return {std::move(builder).build(), layout};
}

// ---------------------------------------------------------------------------

double IsingModel::energy(std::span<const int> spins) const {
    if (spins.size() != biases.size()) throw ValidationError("spin vector length mismatch");
    double e = offset;
    for (std::size_t i = 0; i < biases.size(); ++i) e += biases[i] * spins[i];
    for (const auto& c : couplers) e += c.strength * spins[c.i] * spins[c.j];
    return e;
}

IsingModel qubo_to_ising(const QuboMatrix& q) {
    IsingModel m;
    m.biases.assign(q.size(), 0.0);
    m.offset = q.offset();
    for (const auto& t : q.terms()) {
        if (t.row == t.col) {
            m.biases[t.row] += 0.5 * t.value;
            m.offset += 0.5 * t.value;
        } else {
            m.biases[t.row] += 0.25 * t.value;
            m.biases[t.col] += 0.25 * t.value;
            m.couplers.push_back({t.row, t.col, 0.25 * t.value});
            m.offset += 0.25 * t.value;
        }
    }
    return m;
}

std::vector<int> to_spins(std::span<const Bit> x) {
    std::vector<int> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
    return s;
}

// ---------------------------------------------------------------------------

std::string constraint_name(Constraint c) {
    switch (c) {
        case Constraint::C1: return "C1";
        case Constraint::C2: return "C2";
        case Constraint::C3: return "C3";
        case Constraint::C4: return "C4";
    }
    return "?";
}

std::string Violation::to_string() const {
    std::ostringstream ss;
    ss << constraint_name(constraint);
    switch (constraint) {
        case Constraint::C1: ss << "(user=" << user << ")"; break;
        case Constraint::C2: ss << "(user=" << user << ",beam=" << beam << ")"; break;
        case Constraint::C3:
            ss << "(user=" << user << ",other=" << other << ",beam=" << beam << ")";
            break;
        case Constraint::C4: ss << "(beam=" << beam << ")"; break;
    }
    return ss.str();
}

BeamSolution::BeamSolution(std::size_t n_users, std::size_t n_beams)
        : users(n_users), beams(n_beams), assignment(n_users * n_beams, 0), active(n_beams, 0) {}

std::optional<std::size_t> BeamSolution::beam_of(std::size_t user) const {
    std::optional<std::size_t> found;
    for (std::size_t b = 0; b < beams; ++b) {
        if (a(user, b)) {
            if (found) return std::nullopt;
            found = b;
        }
    }
    return found;
}

void BeamSolution::refresh_objective() {
    objective = static_cast<std::size_t>(std::count(active.begin(), active.end(), Bit{1}));
}

std::vector<Violation> check_feasibility(const BeamSolution& sol, const ProblemInstance& inst) {
    if (sol.users != inst.users() || sol.beams != inst.beams) {
        throw ValidationError("solution dimensions do not match the instance");
    }
    const std::size_t n = sol.users;
    const std::size_t nb = sol.beams;
    std::vector<Violation> out;

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t b = 0; b < nb; ++b) count += sol.a(i, b);
        if (count != 1) out.push_back({Constraint::C1, i, 0, 0});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t b = 0; b < nb; ++b) {
            if (sol.a(i, b) && !sol.active[b]) out.push_back({Constraint::C2, i, 0, b});
        }
    }
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!sol.a(i, b)) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (sol.a(j, b) && !inst.graph.adjacent(i, j)) {
                    out.push_back({Constraint::C3, i, j, b});
                }
            }
        }
    }
    for (std::size_t b = 0; b < nb; ++b) {
        std::size_t load = 0;
        for (std::size_t i = 0; i < n; ++i) load += sol.a(i, b);
        if (load > inst.capacity) out.push_back({Constraint::C4, 0, 0, b});
    }
    return out;
}

BeamSolution decode(std::span<const Bit> x, const VariableLayout& layout,
                    const ProblemInstance& inst) {
    if (x.size() != layout.size()) {
        throw ValidationError("bitstring length " + std::to_string(x.size()) +
                              " does not match layout size " + std::to_string(layout.size()));
    }
    BeamSolution sol(layout.users(), layout.beams());
    for (std::size_t b = 0; b < layout.beams(); ++b) {
        for (std::size_t i = 0; i < layout.users(); ++i) {
            sol.set_a(i, b, x[layout.a_index(i, b)] ? 1 : 0);
        }
        sol.active[b] = x[layout.z_index(b)] ? 1 : 0;
    }
    sol.refresh_objective();
    sol.violations = check_feasibility(sol, inst);
    return sol;
}

Bitstring encode(const BeamSolution& sol, const VariableLayout& layout) {
    Bitstring x(layout.size(), 0);
    for (std::size_t b = 0; b < layout.beams(); ++b) {
        std::size_t load = 0;
        for (std::size_t i = 0; i < layout.users(); ++i) {
            x[layout.a_index(i, b)] = sol.a(i, b);
            load += sol.a(i, b);
        }
        x[layout.z_index(b)] = sol.active[b];
        if (load < layout.capacity()) x[layout.s_index(b, layout.capacity() - load)] = 1;
    }
    return x;
}

// ---------------------------------------------------------------------------

ConditioningSink::ConditioningSink(std::vector<std::uint8_t> fixed)
        : fixed_(std::move(fixed)),
          full_to_free_(fixed_.size(), std::numeric_limits<std::size_t>::max()),
          builder_(static_cast<std::size_t>(std::count(fixed_.begin(), fixed_.end(), kFree))) {
    for (std::size_t k = 0; k < fixed_.size(); ++k) {
        if (fixed_[k] == kFree) {
            full_to_free_[k] = free_to_full_.size();
            free_to_full_.push_back(k);
        } else if (fixed_[k] > 1) {
            throw ValidationError("fixed value for variable " + std::to_string(k) +
                                  " is not a bit");
        }
    }
}

void ConditioningSink::add_term(std::size_t i, std::size_t j, double value) {
    if (i >= fixed_.size() || j >= fixed_.size()) {
        throw ValidationError("term index outside conditioned QUBO");
    }
    const bool fi = fixed_[i] != kFree;
    const bool fj = fixed_[j] != kFree;
    if (!fi && !fj) {
        builder_.add_term(full_to_free_[i], full_to_free_[j], value);
    } else if (fi && fj) {
        if (fixed_[i] && fixed_[j]) builder_.add_offset(value);
    } else {
        // one side fixed; i == j cannot reach here
        const std::size_t free_var = fi ? j : i;
        const std::uint8_t other = fi ? fixed_[i] : fixed_[j];
        if (other) builder_.add_term(full_to_free_[free_var], full_to_free_[free_var], value);
    }
}

ConditionedQubo ConditioningSink::finish() && {
    return {std::move(builder_).build(), std::move(free_to_full_)};
}

ConditionedQubo condition(const QuboMatrix& q, const std::map<std::size_t, Bit>& fixed) {
    std::vector<std::uint8_t> mask(q.size(), ConditioningSink::kFree);
    for (const auto& [var, bit] : fixed) {
        if (var >= q.size()) {
            throw ValidationError("fixed variable " + std::to_string(var) + " out of range");
        }
        if (bit > 1) throw ValidationError("fixed value is not a bit");
        mask[var] = bit;
    }
    ConditioningSink sink(std::move(mask));
    sink.add_offset(q.offset());
    for (const auto& t : q.terms()) sink.add_term(t.row, t.col, t.value);
    return std::move(sink).finish();
}

Bitstring merge_fixed(std::size_t full_size, const std::map<std::size_t, Bit>& fixed,
                      std::span<const std::size_t> free_to_full, std::span<const Bit> free_bits) {
    if (free_bits.size() != free_to_full.size()) {
        throw ValidationError("free sample length " + std::to_string(free_bits.size()) +
                              " does not match " + std::to_string(free_to_full.size()) +
                              " free variables");
    }
    Bitstring x(full_size, 0);
    for (const auto& [var, bit] : fixed) x.at(var) = bit;
    for (std::size_t k = 0; k < free_to_full.size(); ++k) x.at(free_to_full[k]) = free_bits[k];
    return x;
}

// ---------------------------------------------------------------------------

void write_qubo(std::ostream& out, const QuboMatrix& q) {
    out << std::setprecision(17);
    out << q.size() << ' ' << q.offset() << '\n';
    for (const auto& t : q.terms()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

QuboMatrix read_qubo(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            auto pos = line.find_first_not_of(" \t\r");
            if (pos != std::string::npos && line[pos] != '#') return true;
        }
        return false;
    };

    if (!next_line()) throw FormatError("QUBO file is empty");
    long long size = -1;
    double offset = 0.0;
    {
        std::istringstream ss(line);
        if (!(ss >> size >> offset) || size < 0 || !std::isfinite(offset)) {
            throw FormatError("QUBO header must be 'S offset'");
        }
    }
    QuboBuilder builder(static_cast<std::size_t>(size));
    builder.add_offset(offset);
    while (next_line()) {
        std::istringstream ss(line);
        long long i = -1, j = -1;
        double v = 0.0;
        std::string rest;
        if (!(ss >> i >> j >> v) || (ss >> rest)) {
            throw FormatError("QUBO line " + std::to_string(line_no) + ": expected 'i j value'");
        }
        if (i < 0 || j < 0 || i > j || j >= size) {
            throw FormatError("QUBO line " + std::to_string(line_no) +
                              ": indices must satisfy 0 <= i <= j < S");
        }
        if (!std::isfinite(v)) {
            throw FormatError("QUBO line " + std::to_string(line_no) + ": non-finite value");
        }
        builder.add_term(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
    }
    return std::move(builder).build();
}

}  // namespace beamqubo
