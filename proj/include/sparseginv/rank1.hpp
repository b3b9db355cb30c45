#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "error.hpp"
#include "ginv.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

/// A = r s^T with both factors nonzero.
struct Rank1Factorization {
    std::vector<double> r_vec; // length m
    std::vector<double> s_vec; // length n
};

/// Optimality certificate for the rank-1 minimizer. Indices are 0-based:
/// i_star indexes columns of A (rows of H), j_star rows of A.
struct Rank1Certificate {
    std::size_t i_star = 0;
    std::size_t j_star = 0;
    double dual_w = 0.0;
    double dual_objective = 0.0;
};

/// Dual variables (U, V, W) of the LP, each in the shape of its constraint family.
struct Rank1Dual {
    Matrix U; // n x m
    Matrix V; // n x m
    Matrix W; // m x n
};

/**
 * r is the column holding the largest-magnitude entry (first in row-major
 * order); s is the least-squares fit s_i = <r, A e_i> / <r, r>.
 */
inline Rank1Factorization factor_rank1(const Matrix& a)
{
    std::size_t best_col = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (std::abs(a(i, j)) > best) {
                best = std::abs(a(i, j));
                best_col = j;
            }
        }
    }
    if (best <= 0.0) {
        throw Error(ErrorCode::ZeroMatrix, "zero matrix has no rank-1 factorization");
    }
    Rank1Factorization f;
    f.r_vec.resize(a.rows());
    double rr = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        f.r_vec[i] = a(i, best_col);
        rr += f.r_vec[i] * f.r_vec[i];
    }
    f.s_vec.assign(a.cols(), 0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            dot += f.r_vec[i] * a(i, j);
        }
        f.s_vec[j] = dot / rr;
    }
    return f;
}

namespace detail {

inline std::size_t argmax_abs(const std::vector<double>& v)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > std::abs(v[best])) {
            best = k;
        }
    }
    return best;
}

} // namespace detail

/**
 * Minimum 1-norm generalized inverse of a rank-1 matrix: the single entry
 * 1 / (r_{j*} s_{i*}) at (i*, j*), with i* and j* maximizing |s_i| and |r_j|
 * (smallest index on ties).
 */
inline std::pair<GinvResult, Rank1Certificate> solve_rank1(const Matrix& a, const Tolerances& tol = {})
{
    if (a.empty() || rank(a, tol) != 1) {
        throw Error(ErrorCode::NotRankOne, "matrix rank is not 1");
    }
    const auto f = factor_rank1(a);
    const std::size_t i_star = detail::argmax_abs(f.s_vec);
    const std::size_t j_star = detail::argmax_abs(f.r_vec);
    const double rj = f.r_vec[j_star];
    const double si = f.s_vec[i_star];

    Matrix h(a.cols(), a.rows());
    h(i_star, j_star) = 1.0 / (rj * si);

    Rank1Certificate cert;
    cert.i_star = i_star;
    cert.j_star = j_star;
    cert.dual_w = 1.0 / (rj * std::abs(rj) * si * std::abs(si));
    cert.dual_objective = 1.0 / (std::abs(rj) * std::abs(si));

    SubmatrixSelection sel{{j_star}, {i_star}};
    return {make_result(a, std::move(h), Method::rank1, tol, std::move(sel)), cert};
}

/// Reconstructs the closed-form dual solution from a certificate.
inline Rank1Dual rank1_dual(const Matrix& a, const Rank1Certificate& cert)
{
    const auto f = factor_rank1(a);
    const double scale = std::abs(f.r_vec[cert.j_star]) * std::abs(f.s_vec[cert.i_star]);
    Rank1Dual d{Matrix(a.cols(), a.rows()), Matrix(a.cols(), a.rows()), Matrix(a.rows(), a.cols())};
    for (std::size_t i = 0; i < a.cols(); ++i) {
        for (std::size_t j = 0; j < a.rows(); ++j) {
            d.U(i, j) = 0.5 * (1.0 + f.r_vec[j] * f.s_vec[i] / scale);
            d.V(i, j) = 1.0 - d.U(i, j);
        }
    }
    d.W(cert.j_star, cert.i_star) = cert.dual_w;
    return d;
}

/// Largest violation of the dual constraints U + V = J, -U + V + A^T W A^T = 0, U, V >= 0.
inline double rank1_dual_violation(const Matrix& a, const Rank1Dual& d)
{
    const Matrix at = a.transpose();
    const Matrix coupling = at * d.W * at;
    double worst = 0.0;
    for (std::size_t i = 0; i < d.U.rows(); ++i) {
        for (std::size_t j = 0; j < d.U.cols(); ++j) {
            worst = std::max(worst, std::abs(d.U(i, j) + d.V(i, j) - 1.0));
            worst = std::max(worst, std::abs(-d.U(i, j) + d.V(i, j) + coupling(i, j)));
            worst = std::max(worst, -d.U(i, j));
            worst = std::max(worst, -d.V(i, j));
        }
    }
    return worst;
}

} // namespace sparseginv
