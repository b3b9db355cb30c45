#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "ginv.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

enum class LpStatus { optimal, infeasible, iteration_limit };

constexpr std::string_view lp_status_name(LpStatus s) noexcept
{
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

/// Result of min c^T x subject to E x = b, x >= 0.
struct SimplexOutcome {
    std::vector<double> x;
    double objective = 0.0;
    LpStatus status = LpStatus::infeasible;
    std::size_t pivot_count = 0;
};

namespace detail {

/// Dense tableau: rows 0..m-1 constraints, last column the right-hand side.
class Tableau {
public:
    Tableau(const Matrix& e, std::span<const double> b)
        : rows_(e.rows()), vars_(e.cols()), width_(e.cols() + e.rows() + 1),
          t_(rows_ * width_, 0.0), obj_(width_, 0.0), basis_(rows_), active_(rows_, true)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            const double flip = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < vars_; ++j) {
                at(i, j) = flip * e(i, j);
            }
            at(i, vars_ + i) = 1.0;
            at(i, width_ - 1) = flip * b[i];
            basis_[i] = vars_ + i;
        }
    }

    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
    std::size_t rows() const { return rows_; }
    std::size_t vars() const { return vars_; }
    std::size_t rhs_col() const { return width_ - 1; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<bool>& active() const { return active_; }
    bool is_artificial(std::size_t j) const { return j >= vars_ && j < width_ - 1; }

    /// Loads reduced costs for the given per-column costs (artificials included).
    void set_costs(const std::vector<double>& cost)
    {
        std::fill(obj_.begin(), obj_.end(), 0.0);
        std::copy(cost.begin(), cost.end(), obj_.begin());
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!active_[i]) {
                continue;
            }
            const double cb = cost[basis_[i]];
            if (cb == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < width_; ++j) {
                obj_[j] -= cb * at(i, j);
            }
        }
    }

    double current_objective() const { return -obj_[width_ - 1]; }

    void pivot(std::size_t row, std::size_t col)
    {
        const double pv = at(row, col);
        for (std::size_t j = 0; j < width_; ++j) {
            at(row, j) /= pv;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || !active_[i]) {
                continue;
            }
            const double f = at(i, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < width_; ++j) {
                at(i, j) -= f * at(row, j);
            }
            at(i, col) = 0.0;
        }
        const double f = obj_[col];
        if (f != 0.0) {
            for (std::size_t j = 0; j < width_; ++j) {
                obj_[j] -= f * at(row, j);
            }
            obj_[col] = 0.0;
        }
        basis_[row] = col;
    }

    /// Bland's rule: lowest-index entering column with negative reduced cost,
    /// ratio ties broken by lowest basic variable index.
    enum class Step { optimal, unbounded, budget };

    Step run(bool allow_artificial, std::size_t& pivots, std::size_t budget, double eps)
    {
        while (true) {
            std::size_t enter = width_;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (!allow_artificial && is_artificial(j)) {
                    continue;
                }
                if (obj_[j] < -eps) {
                    enter = j;
                    break;
                }
            }
            if (enter == width_) {
                return Step::optimal;
            }
            std::size_t leave = rows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!active_[i]) {
                    continue;
                }
                const double coef = at(i, enter);
                if (coef <= eps) {
                    continue;
                }
                const double ratio = at(i, rhs_col()) / coef;
                if (ratio < best_ratio - eps ||
                    (std::abs(ratio - best_ratio) <= eps && leave < rows_ && basis_[i] < basis_[leave])) {
                    best_ratio = std::min(ratio, best_ratio);
                    leave = i;
                }
            }
            if (leave == rows_) {
                return Step::unbounded;
            }
            if (pivots >= budget) {
                return Step::budget;
            }
            pivot(leave, enter);
            ++pivots;
        }
    }

    /// Pivots zero-level artificials out of the basis; rows where that is
    /// impossible are redundant and deactivated.
    void expel_artificials(double eps)
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!active_[i] || !is_artificial(basis_[i])) {
                continue;
            }
            std::size_t col = vars_;
            double best = eps;
            for (std::size_t j = 0; j < vars_; ++j) {
                if (std::abs(at(i, j)) > best) {
                    best = std::abs(at(i, j));
                    col = j;
                }
            }
            if (col == vars_) {
                active_[i] = false;
            } else {
                pivot(i, col);
            }
        }
    }

private:
    std::size_t rows_;
    std::size_t vars_;
    std::size_t width_;
    std::vector<double> t_;
    std::vector<double> obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

} // namespace detail

/**
 * Dense two-phase primal simplex with Bland's anti-cycling rule for
 * min c^T x s.t. E x = b, x >= 0. The final basic solution is re-solved from
 * the original data to shed accumulated tableau rounding.
 */
inline SimplexOutcome solve_standard_form(std::span<const double> cost, const Matrix& e, std::span<const double> b,
                                          std::size_t pivot_budget, double eps = 1e-9)
{
    if (cost.size() != e.cols() || b.size() != e.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "LP data shapes disagree");
    }
    SimplexOutcome out;
    detail::Tableau tab(e, b);
    const std::size_t width = e.cols() + e.rows();

    std::vector<double> phase1(width, 0.0);
    for (std::size_t j = e.cols(); j < width; ++j) {
        phase1[j] = 1.0;
    }
    tab.set_costs(phase1);
    auto step = tab.run(true, out.pivot_count, pivot_budget, eps);
    if (step == detail::Tableau::Step::budget) {
        out.status = LpStatus::iteration_limit;
        return out;
    }
    double bscale = 1.0;
    for (double v : b) {
        bscale = std::max(bscale, std::abs(v));
    }
    if (tab.current_objective() > 1e-7 * bscale) {
        out.status = LpStatus::infeasible;
        return out;
    }
    tab.expel_artificials(eps);

    std::vector<double> phase2(width, 0.0);
    std::copy(cost.begin(), cost.end(), phase2.begin());
    tab.set_costs(phase2);
    step = tab.run(false, out.pivot_count, pivot_budget, eps);
    if (step == detail::Tableau::Step::budget) {
        out.status = LpStatus::iteration_limit;
        return out;
    }
    if (step == detail::Tableau::Step::unbounded) {
        out.status = LpStatus::infeasible;
        return out;
    }

    out.x.assign(e.cols(), 0.0);
    std::vector<std::size_t> kept_rows;
    std::vector<std::size_t> basic_cols;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.active()[i]) {
            kept_rows.push_back(i);
            basic_cols.push_back(tab.basis()[i]);
            out.x[tab.basis()[i]] = tab.at(i, tab.rhs_col());
        }
    }
    if (!kept_rows.empty()) {
        Matrix basis = e.select(kept_rows, basic_cols);
        std::vector<double> rhs;
        for (std::size_t i : kept_rows) {
            rhs.push_back(b[i]);
        }
        try {
            const auto xb = solve_square(basis, rhs);
            for (std::size_t k = 0; k < basic_cols.size(); ++k) {
                out.x[basic_cols[k]] = std::max(0.0, xb[k]);
            }
        } catch (const Error&) {
            // keep the tableau values
        }
    }
    out.objective = 0.0;
    for (std::size_t j = 0; j < cost.size(); ++j) {
        out.objective += cost[j] * out.x[j];
    }
    out.status = LpStatus::optimal;
    return out;
}

/**
 * min sum(p + q) s.t. F (p - q) C = I_r, p, q >= 0, where A = C F is a rank
 * factorization and H = p - q (n x m, row-major). Variables 0..mn-1 are p,
 * mn..2mn-1 are q; the equality for (a, b) sits in row a * r + b.
 */
struct LpProblem {
    std::size_t h_rows = 0; // n
    std::size_t h_cols = 0; // m
    std::size_t rank = 0;
    std::vector<double> cost;
    Matrix equality;
    std::vector<double> rhs;

    std::size_t variable_count() const noexcept { return cost.size(); }
    std::size_t equality_count() const noexcept { return rhs.size(); }
};

struct LpSolution {
    Matrix H_opt;
    double objective = 0.0;
    LpStatus status = LpStatus::infeasible;
    std::size_t pivot_count = 0;
};

inline LpProblem formulate(const Matrix& a, const Tolerances& tol = {})
{
    if (a.empty()) {
        throw Error(ErrorCode::ZeroMatrix, "empty matrix");
    }
    const auto fac = rank_factorize(a, tol);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t r = fac.rank();
    const std::size_t mn = m * n;

    LpProblem p;
    p.h_rows = n;
    p.h_cols = m;
    p.rank = r;
    p.cost.assign(2 * mn, 1.0);
    p.equality = Matrix(r * r, 2 * mn);
    p.rhs.assign(r * r, 0.0);
    for (std::size_t x = 0; x < r; ++x) {
        for (std::size_t y = 0; y < r; ++y) {
            const std::size_t row = x * r + y;
            p.rhs[row] = x == y ? 1.0 : 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    const double coef = fac.F(x, i) * fac.C(j, y);
                    p.equality(row, i * m + j) = coef;
                    p.equality(row, mn + i * m + j) = -coef;
                }
            }
        }
    }
    return p;
}

/// Solves the formulation; pivot budget is 50 * variable_count.
inline LpSolution simplex_solve(const LpProblem& p, const Tolerances& /*tol*/ = {})
{
    const auto outcome = solve_standard_form(p.cost, p.equality, p.rhs, 50 * p.variable_count());
    LpSolution sol;
    sol.status = outcome.status;
    sol.pivot_count = outcome.pivot_count;
    if (outcome.status != LpStatus::optimal) {
        return sol;
    }
    const std::size_t mn = p.h_rows * p.h_cols;
    sol.H_opt = Matrix(p.h_rows, p.h_cols);
    for (std::size_t i = 0; i < p.h_rows; ++i) {
        for (std::size_t j = 0; j < p.h_cols; ++j) {
            const std::size_t k = i * p.h_cols + j;
            sol.H_opt(i, j) = outcome.x[k] - outcome.x[mn + k];
        }
    }
    double norm = 0.0;
    for (double v : sol.H_opt.data()) {
        norm += std::abs(v);
    }
    sol.objective = norm;
    return sol;
}

/// Minimum 1-norm generalized inverse by linear programming.
inline std::pair<GinvResult, LpSolution> min_norm_ginv_lp(const Matrix& a, const Tolerances& tol = {})
{
    const LpProblem p = formulate(a, tol);
    LpSolution sol = simplex_solve(p, tol);
    if (sol.status == LpStatus::iteration_limit) {
        throw Error(ErrorCode::IterationLimit, "simplex pivot budget exhausted");
    }
    if (sol.status != LpStatus::optimal) {
        throw Error(ErrorCode::Infeasible, "LP reported infeasible");
    }
    GinvResult res = make_result(a, sol.H_opt, Method::lp, tol);
    return {std::move(res), std::move(sol)};
}

} // namespace sparseginv
