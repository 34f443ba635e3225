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

#include "beamqubo/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beamqubo/errors.hpp"

namespace beamqubo {

std::size_t LinearProgram::add_variable(double c, double lo, double up) {
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(up);
    return cost.size() - 1;
}

std::size_t LinearProgram::add_row(std::vector<std::pair<std::size_t, double>> terms,
                                   Relation rel, double rhs) {
    rows.push_back({std::move(terms), rel, rhs});
    return rows.size() - 1;
}

void LinearProgram::validate() const {
    const std::size_t n = cost.size();
    if (lower.size() != n || upper.size() != n) {
        throw ValidationError("LP bound vectors do not match the variable count");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(cost[j])) throw ValidationError("LP cost is not finite");
        if (!std::isfinite(lower[j])) throw ValidationError("LP lower bounds must be finite");
        if (std::isnan(upper[j]) || upper[j] < lower[j]) {
            throw ValidationError("LP variable " + std::to_string(j) + " has empty bounds");
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!std::isfinite(rows[r].rhs)) throw ValidationError("LP right-hand side not finite");
        for (const auto& [j, a] : rows[r].terms) {
            if (j >= n) {
                throw ValidationError("LP row " + std::to_string(r) + " references variable " +
                                      std::to_string(j));
            }
            if (!std::isfinite(a)) throw ValidationError("LP coefficient is not finite");
        }
    }
}

double lp_residual(const LinearProgram& lp, std::span<const double> x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, lp.lower[j] - x[j]);
        if (std::isfinite(lp.upper[j])) worst = std::max(worst, x[j] - lp.upper[j]);
    }
    for (const auto& row : lp.rows) {
        double act = 0.0;
        for (const auto& [j, a] : row.terms) act += a * x[j];
        switch (row.relation) {
            case Relation::LessEqual: worst = std::max(worst, act - row.rhs); break;
            case Relation::GreaterEqual: worst = std::max(worst, row.rhs - act); break;
            case Relation::Equal: worst = std::max(worst, std::abs(act - row.rhs)); break;
        }
    }
    return worst;
}

namespace {

enum class Status : unsigned char { Basic, AtLower, AtUpper };

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kTieTol = 1e-12;

/// Dense tableau over shifted variables x' = x - lower in [0, upper - lower].
class Tableau {
 public:
    Tableau(const LinearProgram& lp, const LpOptions& opts) : opts_(opts) {
        n_struct_ = lp.num_variables();
        m_ = lp.rows.size();

        std::size_t n_slack = 0;
        for (const auto& row : lp.rows) n_slack += row.relation != Relation::Equal;

        // Decide per row whether the slack can start basic or an artificial
        // is needed, after flipping rows to a non-negative right-hand side.
        std::vector<double> rhs(m_);
        std::vector<double> slack_sign(m_, 0.0);
        std::vector<bool> negate(m_, false);
        std::size_t n_art = 0;
        for (std::size_t r = 0; r < m_; ++r) {
            const auto& row = lp.rows[r];
            double b = row.rhs;
            for (const auto& [j, a] : row.terms) b -= a * lp.lower[j];
            if (row.relation == Relation::LessEqual) slack_sign[r] = 1.0;
            if (row.relation == Relation::GreaterEqual) slack_sign[r] = -1.0;
            negate[r] = b < 0.0;
            rhs[r] = std::abs(b);
            const double s = negate[r] ? -slack_sign[r] : slack_sign[r];
            if (s <= 0.0) ++n_art;
        }

        first_slack_ = n_struct_;
        first_art_ = n_struct_ + n_slack;
        n_cols_ = first_art_ + n_art;
        t_.assign(m_ * n_cols_, 0.0);
        upper_.assign(n_cols_, kInf);
        status_.assign(n_cols_, Status::AtLower);
        basis_.assign(m_, 0);
        beta_.assign(m_, 0.0);
        art_row_.assign(n_art, 0);

        for (std::size_t j = 0; j < n_struct_; ++j) upper_[j] = lp.upper[j] - lp.lower[j];

        std::size_t next_slack = first_slack_;
        std::size_t next_art = first_art_;
        for (std::size_t r = 0; r < m_; ++r) {
            const double sign = negate[r] ? -1.0 : 1.0;
            for (const auto& [j, a] : lp.rows[r].terms) at(r, j) += sign * a;
            std::size_t basic = n_cols_;
            if (slack_sign[r] != 0.0) {
                at(r, next_slack) = sign * slack_sign[r];
                if (at(r, next_slack) > 0.0) basic = next_slack;
                ++next_slack;
            }
            if (basic == n_cols_) {
                at(r, next_art) = 1.0;
                upper_[next_art] = kInf;
                art_row_[next_art - first_art_] = r;
                basic = next_art++;
            }
            basis_[r] = basic;
            status_[basic] = Status::Basic;
            beta_[r] = rhs[r];
        }

        max_iter_ = opts.max_iterations ? opts.max_iterations : 50 * (m_ + n_cols_) + 1000;
    }

    void phase_one() {
        if (first_art_ == n_cols_) return;
        std::vector<double> c(n_cols_, 0.0);
        for (std::size_t j = first_art_; j < n_cols_; ++j) c[j] = 1.0;
        run(c, n_cols_);

        double infeas = 0.0;
        std::size_t worst_row = m_;
        double worst = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] >= first_art_) {
                infeas += beta_[r];
                if (beta_[r] > worst) {
                    worst = beta_[r];
                    worst_row = art_row_[basis_[r] - first_art_];
                }
            }
        }
        if (infeas > 1e-7) {
            throw InfeasibleError("LP is infeasible: row " + std::to_string(worst_row) +
                                  " cannot be satisfied (phase-one residual " +
                                  std::to_string(infeas) + ")");
        }
        for (std::size_t j = first_art_; j < n_cols_; ++j) upper_[j] = 0.0;
    }

    void phase_two(const std::vector<double>& cost) {
        std::vector<double> c(n_cols_, 0.0);
        std::copy(cost.begin(), cost.end(), c.begin());
        run(c, first_art_);
    }

    std::vector<double> structural_values() const {
        std::vector<double> x(n_struct_, 0.0);
        for (std::size_t j = 0; j < n_struct_; ++j) {
            if (status_[j] == Status::AtUpper) x[j] = upper_[j];
        }
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_struct_) x[basis_[r]] = beta_[r];
        }
        return x;
    }

    std::size_t iterations() const noexcept { return iterations_; }

 private:
    double& at(std::size_t r, std::size_t c) { return t_[r * n_cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * n_cols_ + c]; }

    /// Simplex iterations for cost c; columns >= `eligible_end` never enter.
    void run(const std::vector<double>& c, std::size_t eligible_end) {
        std::vector<double> d(c);
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = c[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < n_cols_; ++j) d[j] -= cb * at(r, j);
        }
        for (std::size_t r = 0; r < m_; ++r) d[basis_[r]] = 0.0;

        const double opt_tol = opts_.optimality_tolerance;
        for (;;) {
            std::size_t enter = n_cols_;
            for (std::size_t j = 0; j < eligible_end; ++j) {
                if (status_[j] == Status::AtLower && upper_[j] > 0.0 && d[j] < -opt_tol) {
                    enter = j;
                    break;
                }
                if (status_[j] == Status::AtUpper && d[j] > opt_tol) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_cols_) return;
            if (++iterations_ > max_iter_) {
                throw ResourceError("simplex exceeded " + std::to_string(max_iter_) +
                                    " iterations");
            }

            const double dir = status_[enter] == Status::AtLower ? 1.0 : -1.0;
            double best = upper_[enter];
            std::size_t leave = m_;
            for (std::size_t r = 0; r < m_; ++r) {
                const double alpha = dir * at(r, enter);
                double ratio;
                if (alpha > kPivotTol) {
                    ratio = std::max(beta_[r], 0.0) / alpha;
                } else if (alpha < -kPivotTol && std::isfinite(upper_[basis_[r]])) {
                    ratio = std::max(upper_[basis_[r]] - beta_[r], 0.0) / -alpha;
                } else {
                    continue;
                }
                if (ratio < best - kTieTol ||
                    (leave != m_ && ratio <= best + kTieTol && basis_[r] < basis_[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (!std::isfinite(best)) throw ValidationError("LP is unbounded");

            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, enter);
                if (a != 0.0) beta_[r] -= dir * a * best;
            }

            if (leave == m_) {
                status_[enter] = status_[enter] == Status::AtLower ? Status::AtUpper
                                                                   : Status::AtLower;
                continue;
            }

            const std::size_t out = basis_[leave];
            const double alpha = dir * at(leave, enter);
            status_[out] = alpha > 0.0 ? Status::AtLower : Status::AtUpper;
            const double entering_value =
                    status_[enter] == Status::AtLower ? best : upper_[enter] - best;
            status_[enter] = Status::Basic;
            basis_[leave] = enter;
            beta_[leave] = entering_value;
            pivot(leave, enter, d);
        }
    }

    void pivot(std::size_t pr, std::size_t pc, std::vector<double>& d) {
        double* prow = &t_[pr * n_cols_];
        const double inv = 1.0 / prow[pc];
        for (std::size_t j = 0; j < n_cols_; ++j) prow[j] *= inv;
        prow[pc] = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr) continue;
            double* row = &t_[r * n_cols_];
            const double f = row[pc];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_cols_; ++j) row[j] -= f * prow[j];
            row[pc] = 0.0;
        }
        const double f = d[pc];
        if (f != 0.0) {
            for (std::size_t j = 0; j < n_cols_; ++j) d[j] -= f * prow[j];
            d[pc] = 0.0;
        }
    }

    LpOptions opts_;
    std::size_t n_struct_ = 0, m_ = 0, n_cols_ = 0;
    std::size_t first_slack_ = 0, first_art_ = 0;
    std::vector<double> t_;
    std::vector<double> upper_;
    std::vector<Status> status_;
    std::vector<std::size_t> basis_;
    std::vector<double> beta_;
    std::vector<std::size_t> art_row_;
    std::size_t iterations_ = 0;
    std::size_t max_iter_ = 0;
};

}  // namespace

LpSolution lp_solve(const LinearProgram& lp, const LpOptions& opts) {
    lp.validate();
    Tableau tab(lp, opts);
    tab.phase_one();
    tab.phase_two(lp.cost);

    LpSolution sol;
    sol.values = tab.structural_values();
    for (std::size_t j = 0; j < sol.values.size(); ++j) sol.values[j] += lp.lower[j];
    sol.objective = lp.offset;
    for (std::size_t j = 0; j < sol.values.size(); ++j) sol.objective += lp.cost[j] * sol.values[j];
    sol.iterations = tab.iterations();
    sol.max_residual = lp_residual(lp, sol.values);
    return sol;
}

}  // namespace beamqubo
