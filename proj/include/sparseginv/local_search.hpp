#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "error.hpp"
#include "ginv.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

struct LocalSearchConfig {
    double epsilon = 0.1;
    /// Cap on accepted swaps; 0 selects 10 * (m + n).
    std::size_t max_sweeps = 0;
    /// Starting selection; complete-pivoting pivots when empty.
    std::optional<SubmatrixSelection> init;
    /// Relative slack on the 1 + epsilon acceptance test so that rounding
    /// noise between equal determinants never counts as an improvement.
    double improvement_slack = 1e-10;
};

struct LocalSearchReport {
    SubmatrixSelection selection;
    double abs_det = 0.0;
    std::size_t swaps_accepted = 0;
    bool converged = false;
    /// |det A[sigma, tau]| at the start and after every accepted swap.
    std::vector<double> abs_det_trajectory;
};

/**
 * Determinant ratios for single swaps, by the rank-one update (Cramer) rule.
 *
 * row_gains(p, k): replacing sigma_k by the p-th row outside sigma multiplies
 * det by (A[rho, tau] inv(A~))_k. col_gains(k, q): replacing tau_k by the
 * q-th column outside tau multiplies det by (inv(A~) A[sigma, gamma])_k.
 */
struct SwapGains {
    std::vector<std::size_t> outside_rows;
    std::vector<std::size_t> outside_cols;
    Matrix row_gains; // (m - r) x r
    Matrix col_gains; // r x (n - r)
};

namespace detail {

inline std::vector<std::size_t> complement(const std::vector<std::size_t>& chosen, std::size_t bound)
{
    std::vector<bool> in(bound, false);
    for (std::size_t idx : chosen) {
        in[idx] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < bound; ++k) {
        if (!in[k]) {
            out.push_back(k);
        }
    }
    return out;
}

} // namespace detail

inline SwapGains swap_gains(const Matrix& a, const SubmatrixSelection& sel, const Matrix& block_inv)
{
    SwapGains g;
    g.outside_rows = detail::complement(sel.rows, a.rows());
    g.outside_cols = detail::complement(sel.cols, a.cols());
    if (!g.outside_rows.empty()) {
        g.row_gains = a.select(g.outside_rows, sel.cols) * block_inv;
    }
    if (!g.outside_cols.empty()) {
        g.col_gains = block_inv * a.select(sel.rows, g.outside_cols);
    }
    return g;
}

/// Largest |gain| over every single row or column swap.
inline double max_swap_gain(const SwapGains& g)
{
    return std::max(g.row_gains.empty() ? 0.0 : g.row_gains.max_abs(),
                    g.col_gains.empty() ? 0.0 : g.col_gains.max_abs());
}

/**
 * Steepest-ascent search for a (1 + epsilon)-local maximizer of |det| over
 * the r x r submatrices, r = rank(A).
 *
 * Each sweep scores all row swaps (by sigma position, then outside row) and
 * then all column swaps (by tau position, then outside column), and accepts
 * the first swap of largest |gain| if it exceeds 1 + epsilon.
 */
inline LocalSearchReport local_search_submatrix(const Matrix& a, const LocalSearchConfig& cfg = {},
                                                const Tolerances& tol = {})
{
    if (cfg.epsilon < 0.0 || !std::isfinite(cfg.epsilon)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must be a nonnegative real");
    }
    if (a.empty()) {
        throw Error(ErrorCode::ZeroMatrix, "empty matrix");
    }
    auto elim = eliminate_complete_pivoting(a, tol);
    const std::size_t r = elim.rank();
    if (r == 0) {
        throw Error(ErrorCode::ZeroMatrix, "local search needs a nonzero matrix");
    }

    LocalSearchReport rep;
    if (cfg.init) {
        validate_selection(a, *cfg.init);
        if (cfg.init->order() != r) {
            throw Error(ErrorCode::RankMismatch, "initial selection order differs from rank(A)");
        }
        rep.selection = *cfg.init;
    } else {
        rep.selection.rows = elim.pivot_rows;
        rep.selection.cols = elim.pivot_cols;
        std::sort(rep.selection.rows.begin(), rep.selection.rows.end());
        std::sort(rep.selection.cols.begin(), rep.selection.cols.end());
    }

    const std::size_t cap = cfg.max_sweeps > 0 ? cfg.max_sweeps : 10 * (a.rows() + a.cols());
    const double threshold = (1.0 + cfg.epsilon) * (1.0 + cfg.improvement_slack);
    SubmatrixSelection& sel = rep.selection;
    rep.abs_det_trajectory.push_back(std::abs(determinant(a.select(sel.rows, sel.cols))));

    while (true) {
        const Matrix inv = selected_inverse(a, sel, tol);
        const SwapGains g = swap_gains(a, sel, inv);

        double best = 0.0;
        bool best_is_row = true;
        std::size_t best_pos = 0;
        std::size_t best_outside = 0;
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t p = 0; p < g.outside_rows.size(); ++p) {
                if (std::abs(g.row_gains(p, k)) > best) {
                    best = std::abs(g.row_gains(p, k));
                    best_is_row = true;
                    best_pos = k;
                    best_outside = g.outside_rows[p];
                }
            }
        }
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t q = 0; q < g.outside_cols.size(); ++q) {
                if (std::abs(g.col_gains(k, q)) > best) {
                    best = std::abs(g.col_gains(k, q));
                    best_is_row = false;
                    best_pos = k;
                    best_outside = g.outside_cols[q];
                }
            }
        }

        if (best <= threshold) {
            rep.converged = true;
            break;
        }
        if (rep.swaps_accepted >= cap) {
            rep.converged = false;
            break;
        }
        (best_is_row ? sel.rows : sel.cols)[best_pos] = best_outside;
        ++rep.swaps_accepted;
        rep.abs_det_trajectory.push_back(std::abs(determinant(a.select(sel.rows, sel.cols))));
    }
    rep.abs_det = rep.abs_det_trajectory.back();
    return rep;
}

struct ApproxResult {
    GinvResult result;
    DualCertificate certificate;
    LocalSearchReport report;
};

/**
 * Block generalized inverse on a (1 + epsilon)-local determinant maximizer.
 * When report.converged holds, ||H||_1 <= r^2 (1 + epsilon)^2 OPT and the
 * certificate's feasibility scale is bounded by the same factor.
 */
inline ApproxResult approx_ginv(const Matrix& a, const LocalSearchConfig& cfg = {}, const Tolerances& tol = {})
{
    ApproxResult out;
    out.report = local_search_submatrix(a, cfg, tol);
    out.result = build_block_ginv(a, out.report.selection, tol);
    out.result.method = Method::local_search;
    out.certificate = build_dual_certificate(a, out.report.selection, tol);
    return out;
}

} // namespace sparseginv
