#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"

namespace sparseginv {

/**
 * Dense real matrix stored row-major.
 *
 * Entries are validated finite on construction. A 0x0 matrix is the only
 * empty shape admitted; every other dimension must be positive.
 */
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
        check_shape();
        if (!std::isfinite(fill)) {
            throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
        }
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        check_shape();
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows x cols");
        }
        check_finite();
    }

    Matrix(std::initializer_list<std::initializer_list<double>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::DimensionMismatch, "ragged initializer list");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_shape();
        check_finite();
    }

    static Matrix identity(std::size_t n)
    {
        Matrix id(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            id(i, i) = 1.0;
        }
        return id;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept
    {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    /// Submatrix with the given row and column indices, in the given order.
    Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const
    {
        Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t a = 0; a < row_idx.size(); ++a) {
            for (std::size_t b = 0; b < col_idx.size(); ++b) {
                s(a, b) = at_checked(row_idx[a], col_idx[b]);
            }
        }
        return s;
    }

    double max_abs() const noexcept
    {
        double best = 0.0;
        for (double v : data_) {
            best = std::max(best, std::abs(v));
        }
        return best;
    }

    double frobenius() const noexcept
    {
        double sum = 0.0;
        for (double v : data_) {
            sum += v * v;
        }
        return std::sqrt(sum);
    }

    Matrix& operator+=(const Matrix& other)
    {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    Matrix& operator-=(const Matrix& other)
    {
        require_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    Matrix& operator*=(double scalar) noexcept
    {
        for (double& v : data_) {
            v *= scalar;
        }
        return *this;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void check_shape() const
    {
        if ((rows_ == 0) != (cols_ == 0)) {
            throw Error(ErrorCode::InvalidArgument, "matrix dimensions must both be positive");
        }
    }

    void check_finite() const
    {
        for (double v : data_) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
            }
        }
    }

    void require_same_shape(const Matrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
        }
    }

    double at_checked(std::size_t i, std::size_t j) const
    {
        if (i >= rows_ || j >= cols_) {
            throw Error(ErrorCode::DimensionMismatch, "index out of range");
        }
        return (*this)(i, j);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
inline Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
inline Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
inline Matrix operator*(double s, Matrix rhs) { return rhs *= s; }

inline Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    if (lhs.cols() != rhs.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ in product");
    }
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

inline std::vector<double> operator*(const Matrix& lhs, std::span<const double> x)
{
    if (lhs.cols() != x.size()) {
        throw Error(ErrorCode::DimensionMismatch, "vector length differs from column count");
    }
    std::vector<double> y(lhs.rows(), 0.0);
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t j = 0; j < lhs.cols(); ++j) {
            y[i] += lhs(i, j) * x[j];
        }
    }
    return y;
}

/// Frobenius inner product <A, B> = trace(A^T B).
inline double inner(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "inner product of differently shaped matrices");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += a.data()[k] * b.data()[k];
    }
    return sum;
}

/**
 * Numerical tolerances threaded through every operation.
 *
 * rank_pivot_tol is relative: the absolute pivot threshold for an m x n
 * matrix M is rank_pivot_tol * max(m, n) * max|M|.
 */
struct Tolerances {
    double rank_pivot_tol = 1e-10;
    double residual_tol = 1e-8;
    double zero_tol = 1e-12;

    double pivot_threshold(const Matrix& m) const noexcept
    {
        return rank_pivot_tol * static_cast<double>(std::max(m.rows(), m.cols())) * m.max_abs();
    }
};

} // namespace sparseginv
