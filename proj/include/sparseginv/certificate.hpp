#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "error.hpp"
#include "ginv.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

/**
 * Dual solution W (m x n) for min{ ||H||_1 : A H A = A }.
 *
 * The dual is max{ <A, W> : ||A^T W A^T||_max <= 1 }, so W / max(s*, 1) with
 * s* = feasibility_scale is always dual feasible and weak duality gives
 * OPT >= objective / max(s*, 1).
 */
struct DualCertificate {
    Matrix W;
    double objective = 0.0;
    double feasibility_scale = 0.0;
};

/// Objective <A, W> and scale ||A^T W A^T||_max, recomputed from W.
inline DualCertificate evaluate_certificate(const Matrix& a, Matrix w)
{
    if (w.rows() != a.rows() || w.cols() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "W must have the shape of A");
    }
    const Matrix at = a.transpose();
    DualCertificate c;
    c.objective = inner(a, w);
    c.feasibility_scale = (at * w * at).max_abs();
    c.W = std::move(w);
    return c;
}

/// W zero outside (sigma, tau), with block inv(A~)^T S inv(A~)^T there.
inline DualCertificate certificate_from_signs(const Matrix& a, const SubmatrixSelection& sel,
                                              const Matrix& block_inv, const Matrix& signs)
{
    const Matrix inv_t = block_inv.transpose();
    const Matrix block = inv_t * signs * inv_t;
    Matrix w(a.rows(), a.cols());
    for (std::size_t k = 0; k < sel.rows.size(); ++k) {
        for (std::size_t l = 0; l < sel.cols.size(); ++l) {
            w(sel.rows[k], sel.cols[l]) = block(k, l);
        }
    }
    return evaluate_certificate(a, std::move(w));
}

/**
 * Sign pattern of inv(A~): S_ij = sign(inv_ij), and for entries within
 * zero_tol of zero the corresponding entry of 2I - J. Then
 * <A, W> = sum_ij S_ij inv_ij = ||inv||_1, and ||S||_max = 1.
 */
inline Matrix inverse_sign_pattern(const Matrix& block_inv, const Tolerances& tol)
{
    const std::size_t r = block_inv.rows();
    Matrix s(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const double v = block_inv(i, j);
            if (std::abs(v) <= tol.zero_tol) {
                s(i, j) = i == j ? 1.0 : -1.0;
            } else {
                s(i, j) = v > 0.0 ? 1.0 : -1.0;
            }
        }
    }
    return s;
}

/// Constructive dual certificate for the block generalized inverse on sel.
inline DualCertificate build_dual_certificate(const Matrix& a, const SubmatrixSelection& sel,
                                              const Tolerances& tol = {})
{
    const Matrix inv = selected_inverse(a, sel, tol);
    return certificate_from_signs(a, sel, inv, inverse_sign_pattern(inv, tol));
}

/**
 * A-posteriori approximation ratio ||H||_1 / OPT <= max(s*, 1), certified by
 * weak duality. The certificate is re-evaluated against A; its objective must
 * match result.one_norm within residual_tol (relative).
 */
inline double certify(const Matrix& a, const GinvResult& result, const DualCertificate& cert,
                      const Tolerances& tol = {})
{
    const auto fresh = evaluate_certificate(a, cert.W);
    const double scale = std::max(1.0, result.one_norm);
    if (std::abs(fresh.objective - result.one_norm) > tol.residual_tol * scale ||
        std::abs(cert.objective - result.one_norm) > tol.residual_tol * scale) {
        throw Error(ErrorCode::ObjectiveMismatch, "certificate objective differs from ||H||_1");
    }
    return std::max(fresh.feasibility_scale, 1.0);
}

} // namespace sparseginv
