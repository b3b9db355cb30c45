#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace sparseginv {

/**
 * Outcome of Gaussian elimination with complete pivoting.
 *
 * Pivots are chosen by largest magnitude; ties go to the smallest row index,
 * then the smallest column index. Elimination stops at the first candidate
 * pivot not exceeding the threshold, so `rank()` pivots were accepted and
 * `lower * upper` reproduces the input in its original indexing.
 */
struct PivotedElimination {
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> pivot_cols;
    std::vector<double> pivots;
    Matrix lower; // m x r, 1 at (pivot_rows[k], k)
    Matrix upper; // r x n

    std::size_t rank() const noexcept { return pivots.size(); }
};

inline PivotedElimination eliminate_complete_pivoting(const Matrix& m, const Tolerances& tol)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const double threshold = tol.pivot_threshold(m);

    Matrix work = m;
    std::vector<bool> row_used(rows, false);
    std::vector<bool> col_used(cols, false);
    std::vector<std::vector<double>> lower_cols;
    std::vector<std::vector<double>> upper_rows;
    PivotedElimination out;

    const std::size_t max_steps = std::min(rows, cols);
    for (std::size_t step = 0; step < max_steps; ++step) {
        double best = -1.0;
        std::size_t p = 0;
        std::size_t q = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (!col_used[j] && std::abs(work(i, j)) > best) {
                    best = std::abs(work(i, j));
                    p = i;
                    q = j;
                }
            }
        }
        if (best <= threshold || best == 0.0) {
            break;
        }

        const double pivot = work(p, q);
        std::vector<double> lcol(rows, 0.0);
        std::vector<double> urow(work.row(p).begin(), work.row(p).end());
        for (std::size_t i = 0; i < rows; ++i) {
            if (!row_used[i]) {
                lcol[i] = work(i, q) / pivot;
            }
        }
        lcol[p] = 1.0;
        // The residual is already zero on previously eliminated columns.
        for (std::size_t j = 0; j < cols; ++j) {
            if (col_used[j]) {
                urow[j] = 0.0;
            }
        }
        row_used[p] = true;
        col_used[q] = true;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (!col_used[j]) {
                    work(i, j) -= lcol[i] * urow[j];
                }
            }
        }

        out.pivot_rows.push_back(p);
        out.pivot_cols.push_back(q);
        out.pivots.push_back(pivot);
        lower_cols.push_back(std::move(lcol));
        upper_rows.push_back(std::move(urow));
    }

    const std::size_t r = out.rank();
    out.lower = r == 0 ? Matrix() : Matrix(rows, r);
    out.upper = r == 0 ? Matrix() : Matrix(r, cols);
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < rows; ++i) {
            out.lower(i, k) = lower_cols[k][i];
        }
        for (std::size_t j = 0; j < cols; ++j) {
            out.upper(k, j) = upper_rows[k][j];
        }
    }
    return out;
}

/// Number of complete-pivoting pivots above the scale-aware threshold.
inline std::size_t rank(const Matrix& m, const Tolerances& tol = {})
{
    if (m.empty()) {
        return 0;
    }
    return eliminate_complete_pivoting(m, tol).rank();
}

/// Gauss-Jordan inverse with complete pivoting; std::nullopt when a pivot
/// falls below the threshold.
inline std::optional<Matrix> try_invert_square(const Matrix& m, const Tolerances& tol = {})
{
    if (!m.is_square() || m.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "inverse requires a nonempty square matrix");
    }
    const std::size_t n = m.rows();
    const double threshold = tol.pivot_threshold(m);
    Matrix a = m;
    Matrix e = Matrix::identity(n);
    std::vector<bool> row_used(n, false);
    std::vector<bool> col_used(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> order;
    order.reserve(n);

    for (std::size_t step = 0; step < n; ++step) {
        double best = -1.0;
        std::size_t p = 0;
        std::size_t q = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (row_used[i]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!col_used[j] && std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    p = i;
                    q = j;
                }
            }
        }
        if (best <= threshold || best == 0.0) {
            return std::nullopt;
        }
        row_used[p] = true;
        col_used[q] = true;
        order.emplace_back(p, q);

        const double pivot = a(p, q);
        for (std::size_t j = 0; j < n; ++j) {
            a(p, j) /= pivot;
            e(p, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p) {
                continue;
            }
            const double factor = a(i, q);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= factor * a(p, j);
                e(i, j) -= factor * e(p, j);
            }
        }
    }

    // The row operations took m to a permutation with ones at (p, q); undo it.
    Matrix inv(n, n);
    for (const auto& [p, q] : order) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(q, j) = e(p, j);
        }
    }
    return inv;
}

inline Matrix invert_square(const Matrix& m, const Tolerances& tol = {})
{
    auto inv = try_invert_square(m, tol);
    if (!inv) {
        throw Error(ErrorCode::Singular, "pivot below threshold during inversion");
    }
    return *std::move(inv);
}

/// Determinant by LU with partial pivoting.
inline double determinant(const Matrix& m)
{
    if (!m.is_square() || m.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant requires a nonempty square matrix");
    }
    const std::size_t n = m.rows();
    Matrix a = m;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        if (a(p, k) == 0.0) {
            return 0.0;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
            }
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
        }
    }
    return det;
}

/// Solves m x = b by LU with partial pivoting; throws Singular on a zero pivot.
inline std::vector<double> solve_square(const Matrix& m, std::span<const double> b)
{
    if (!m.is_square() || m.rows() != b.size()) {
        throw Error(ErrorCode::DimensionMismatch, "solve requires square m and matching b");
    }
    const std::size_t n = m.rows();
    Matrix a = m;
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        if (a(p, k) == 0.0) {
            throw Error(ErrorCode::Singular, "zero pivot in linear solve");
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(k, j));
            }
            std::swap(x[p], x[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
            x[i] -= factor * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double sum = x[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            sum -= a(k, j) * x[j];
        }
        x[k] = sum / a(k, k);
    }
    return x;
}

/// A = C * F with C of full column rank and F of full row rank.
struct RankFactorization {
    Matrix C;
    Matrix F;

    std::size_t rank() const noexcept { return C.cols(); }
};

/// Rank factorization read off the complete-pivoting LU factors.
inline RankFactorization rank_factorize(const Matrix& a, const Tolerances& tol = {})
{
    auto elim = eliminate_complete_pivoting(a, tol);
    if (elim.rank() == 0) {
        throw Error(ErrorCode::ZeroMatrix, "rank-0 matrix has no rank factorization");
    }
    return {std::move(elim.lower), std::move(elim.upper)};
}

/// Moore-Penrose pseudoinverse A+ = F^T (F F^T)^-1 (C^T C)^-1 C^T.
inline Matrix mp_pseudoinverse(const Matrix& a, const Tolerances& tol = {})
{
    const auto fac = rank_factorize(a, tol);
    const Matrix ct = fac.C.transpose();
    const Matrix ft = fac.F.transpose();
    const Matrix left = invert_square(ct * fac.C, tol);
    const Matrix right = invert_square(fac.F * ft, tol);
    return ft * right * left * ct;
}

struct EntrywiseNorms {
    double one_norm = 0.0;
    double max_norm = 0.0;
    std::size_t nnz = 0;
};

/// Vector norms of vec(M); an entry counts toward nnz when |entry| > zero_tol.
inline EntrywiseNorms entrywise_norms(const Matrix& m, const Tolerances& tol = {})
{
    EntrywiseNorms out;
    for (double v : m.data()) {
        const double mag = std::abs(v);
        out.one_norm += mag;
        out.max_norm = std::max(out.max_norm, mag);
        if (mag > tol.zero_tol) {
            ++out.nnz;
        }
    }
    return out;
}

} // namespace sparseginv
