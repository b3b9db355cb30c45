#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace sparseginv {

/// Ordered row indices (sigma) and column indices (tau), 0-based.
struct SubmatrixSelection {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t order() const noexcept { return rows.size(); }

    friend bool operator==(const SubmatrixSelection&, const SubmatrixSelection&) = default;
};

struct PenroseFlags {
    bool p1 = false; // A H A = A
    bool p2 = false; // H A H = H
    bool p3 = false; // A H symmetric
    bool p4 = false; // H A symmetric

    friend bool operator==(const PenroseFlags&, const PenroseFlags&) = default;
};

/// Relative residuals backing PenroseFlags.
struct PenroseResiduals {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
};

enum class Method { block, rank1, rank2, local_search, lp };

constexpr std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::block: return "block";
    case Method::rank1: return "rank1";
    case Method::rank2: return "rank2";
    case Method::local_search: return "local_search";
    case Method::lp: return "lp";
    }
    return "unknown";
}

struct GinvResult {
    Matrix H;
    double one_norm = 0.0;
    std::size_t nnz = 0;
    PenroseFlags flags;
    bool reflexive = false;
    Method method = Method::block;
    std::optional<SubmatrixSelection> selection;
};

namespace detail {

inline void require_conforming(const Matrix& a, const Matrix& h)
{
    if (a.empty() || h.rows() != a.cols() || h.cols() != a.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "H must be n x m for an m x n A");
    }
}

inline double guarded(double norm) noexcept { return norm > 0.0 ? norm : 1.0; }

inline double asymmetry(const Matrix& s)
{
    return (s - s.transpose()).frobenius();
}

} // namespace detail

inline PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& h)
{
    detail::require_conforming(a, h);
    const Matrix ah = a * h;
    const Matrix ha = h * a;
    const double na = a.frobenius();
    const double nh = h.frobenius();
    PenroseResiduals r;
    r.p1 = (ah * a - a).frobenius() / detail::guarded(na);
    r.p2 = (ha * h - h).frobenius() / std::max(nh, 1.0);
    r.p3 = detail::asymmetry(ah) / detail::guarded(na * nh);
    r.p4 = detail::asymmetry(ha) / detail::guarded(na * nh);
    return r;
}

inline PenroseFlags check_penrose(const Matrix& a, const Matrix& h, const Tolerances& tol = {})
{
    const auto r = penrose_residuals(a, h);
    return {r.p1 <= tol.residual_tol, r.p2 <= tol.residual_tol, r.p3 <= tol.residual_tol,
            r.p4 <= tol.residual_tol};
}

/// Reflexive generalized inverse test: P1 plus rank(H) == rank(A).
inline bool is_reflexive(const Matrix& a, const Matrix& h, const Tolerances& tol = {})
{
    if (!check_penrose(a, h, tol).p1) {
        return false;
    }
    return rank(h, tol) == rank(a, tol);
}

/// Fills norms, Penrose flags and reflexivity for a candidate H.
inline GinvResult make_result(const Matrix& a, Matrix h, Method method, const Tolerances& tol,
                              std::optional<SubmatrixSelection> selection = std::nullopt)
{
    GinvResult out;
    const auto norms = entrywise_norms(h, tol);
    out.flags = check_penrose(a, h, tol);
    out.reflexive = out.flags.p1 && rank(h, tol) == rank(a, tol);
    out.one_norm = norms.one_norm;
    out.nnz = norms.nnz;
    out.H = std::move(h);
    out.method = method;
    out.selection = std::move(selection);
    return out;
}

/// Structural checks on a selection: equal sizes, distinct in-range indices.
inline void validate_selection(const Matrix& a, const SubmatrixSelection& sel)
{
    if (sel.rows.size() != sel.cols.size() || sel.rows.empty()) {
        throw Error(ErrorCode::InvalidArgument, "selection needs equally many rows and columns");
    }
    auto distinct_in_range = [](std::vector<std::size_t> idx, std::size_t bound) {
        std::sort(idx.begin(), idx.end());
        return std::adjacent_find(idx.begin(), idx.end()) == idx.end() && idx.back() < bound;
    };
    if (!distinct_in_range(sel.rows, a.rows()) || !distinct_in_range(sel.cols, a.cols())) {
        throw Error(ErrorCode::InvalidArgument, "selection indices must be distinct and in range");
    }
}

/// Inverse of A[sigma, tau]; throws SingularSelection when the pivot test fails.
inline Matrix selected_inverse(const Matrix& a, const SubmatrixSelection& sel, const Tolerances& tol)
{
    validate_selection(a, sel);
    auto inv = try_invert_square(a.select(sel.rows, sel.cols), tol);
    if (!inv) {
        throw Error(ErrorCode::SingularSelection, "selected submatrix is singular");
    }
    return *std::move(inv);
}

/// Scatters inv(A[sigma, tau]) into an otherwise zero n x m matrix at (tau, sigma).
inline Matrix embed_block_inverse(const Matrix& a, const SubmatrixSelection& sel, const Matrix& block_inv)
{
    Matrix h(a.cols(), a.rows());
    for (std::size_t k = 0; k < sel.cols.size(); ++k) {
        for (std::size_t l = 0; l < sel.rows.size(); ++l) {
            h(sel.cols[k], sel.rows[l]) = block_inv(k, l);
        }
    }
    return h;
}

/**
 * Block reflexive generalized inverse: the inverse of a nonsingular r x r
 * submatrix A[sigma, tau], transposed into position (tau, sigma) of an
 * otherwise zero n x m matrix. Requires r == rank(A).
 */
inline GinvResult build_block_ginv(const Matrix& a, const SubmatrixSelection& sel, const Tolerances& tol = {})
{
    validate_selection(a, sel);
    if (sel.order() != rank(a, tol)) {
        throw Error(ErrorCode::RankMismatch, "selection order differs from rank(A)");
    }
    const Matrix inv = selected_inverse(a, sel, tol);
    return make_result(a, embed_block_inverse(a, sel, inv), Method::block, tol, sel);
}

} // namespace sparseginv
