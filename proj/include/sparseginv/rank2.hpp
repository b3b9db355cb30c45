#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "error.hpp"
#include "ginv.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

/// Diagonals of L (rows) and R (columns), each entry +1 or -1, with L A R >= 0.
struct SignScaling {
    std::vector<int> row_signs;
    std::vector<int> col_signs;
};

/// L A R for a diagonal sign scaling.
inline Matrix apply_scaling(const Matrix& a, const SignScaling& s)
{
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) *= s.row_signs[i] * s.col_signs[j];
        }
    }
    return out;
}

/**
 * Finds row and column sign flips making A entrywise nonnegative.
 *
 * Rows and columns are nodes of a bipartite graph with one edge per entry
 * |a_ij| > zero_tol; each edge forces row_sign_i * col_sign_j = sign(a_ij).
 * Components are seeded +1 at their lowest node (rows before columns) and
 * propagated breadth-first.
 */
inline SignScaling sign_normalize(const Matrix& a, const Tolerances& tol = {})
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<int> sign(m + n, 0); // node k < m is row k, node m + j is column j

    auto entry_sign = [&](std::size_t i, std::size_t j) {
        const double v = a(i, j);
        return std::abs(v) <= tol.zero_tol ? 0 : (v > 0.0 ? 1 : -1);
    };

    for (std::size_t seed = 0; seed < m + n; ++seed) {
        if (sign[seed] != 0) {
            continue;
        }
        sign[seed] = 1;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            const std::size_t node = queue.front();
            queue.pop_front();
            const bool is_row = node < m;
            const std::size_t count = is_row ? n : m;
            for (std::size_t k = 0; k < count; ++k) {
                const std::size_t i = is_row ? node : k;
                const std::size_t j = is_row ? k : node - m;
                const int es = entry_sign(i, j);
                if (es == 0) {
                    continue;
                }
                const std::size_t other = is_row ? m + j : i;
                const int required = sign[node] * es;
                if (sign[other] == 0) {
                    sign[other] = required;
                    queue.push_back(other);
                } else if (sign[other] != required) {
                    throw Error(ErrorCode::NotSignNormalizable,
                                "row/column sign flips cannot make the matrix nonnegative");
                }
            }
        }
    }

    SignScaling s;
    s.row_signs.assign(sign.begin(), sign.begin() + static_cast<std::ptrdiff_t>(m));
    s.col_signs.assign(sign.begin() + static_cast<std::ptrdiff_t>(m), sign.end());
    return s;
}

/**
 * Exact minimum 1-norm generalized inverse of a rank-2 matrix that becomes
 * nonnegative under row/column sign flips.
 *
 * All 2x2 submatrices of L A R are enumerated in lexicographic (sigma, tau)
 * order and the nonsingular one with smallest ||inv||_1 wins (earliest on
 * ties within a relative 1e-12). The dual certificate is built on L A R from
 * inv(A~)^T (2I - J) inv(A~)^T after ordering sigma so det(A~) > 0, then
 * mapped back to A as L W R, which preserves both <A, W> and ||A^T W A^T||_max.
 */
inline std::pair<GinvResult, DualCertificate> solve_rank2_nonneg(const Matrix& a, const Tolerances& tol = {})
{
    if (a.empty() || rank(a, tol) != 2) {
        throw Error(ErrorCode::NotRankTwo, "matrix rank is not 2");
    }
    const SignScaling scaling = sign_normalize(a, tol);
    const Matrix scaled = apply_scaling(a, scaling);

    std::optional<SubmatrixSelection> best_sel;
    Matrix best_inv;
    double best_norm = 0.0;
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < a.rows(); ++i2) {
            for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
                for (std::size_t j2 = j1 + 1; j2 < a.cols(); ++j2) {
                    SubmatrixSelection sel{{i1, i2}, {j1, j2}};
                    auto inv = try_invert_square(scaled.select(sel.rows, sel.cols), tol);
                    if (!inv) {
                        continue;
                    }
                    const double norm = entrywise_norms(*inv, tol).one_norm;
                    if (!best_sel || norm < best_norm * (1.0 - 1e-12)) {
                        best_sel = std::move(sel);
                        best_inv = *std::move(inv);
                        best_norm = norm;
                    }
                }
            }
        }
    }
    if (!best_sel) {
        throw Error(ErrorCode::NotRankTwo, "no nonsingular 2x2 submatrix found");
    }

    // H = R Hhat L.
    Matrix h = embed_block_inverse(scaled, *best_sel, best_inv);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
            h(i, j) *= scaling.col_signs[i] * scaling.row_signs[j];
        }
    }

    SubmatrixSelection oriented = *best_sel;
    Matrix oriented_inv = best_inv;
    if (determinant(scaled.select(oriented.rows, oriented.cols)) < 0.0) {
        std::swap(oriented.rows[0], oriented.rows[1]);
        // inv(P A~) = inv(A~) P: swap columns of the inverse.
        for (std::size_t k = 0; k < 2; ++k) {
            std::swap(oriented_inv(k, 0), oriented_inv(k, 1));
        }
    }
    const Matrix two_i_minus_j{{1.0, -1.0}, {-1.0, 1.0}};
    DualCertificate scaled_cert = certificate_from_signs(scaled, oriented, oriented_inv, two_i_minus_j);
    DualCertificate cert = evaluate_certificate(a, apply_scaling(scaled_cert.W, scaling));

    return {make_result(a, std::move(h), Method::rank2, tol, *best_sel), std::move(cert)};
}

} // namespace sparseginv
