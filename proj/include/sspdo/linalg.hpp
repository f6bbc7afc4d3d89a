#pragma once

// Small dense linear algebra: just what stage counts in the tens need.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sspdo/error.hpp"

namespace sspdo {

using Vector = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw Error(ErrorCode::DimensionMismatch,
                            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " entries, expected " + std::to_string(cols));
            }
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] Vector column(std::size_t j) const {
        Vector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline Vector operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
    return out;
}

/// Row vector times matrix, xᵀM.
inline Vector left_multiply(std::span<const double> x, const Matrix& m) {
    if (m.rows() != x.size()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
    Vector out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
    return out;
}

inline Vector row_sums(const Matrix& m) {
    Vector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (double v : m.row(i)) out[i] += v;
    return out;
}

inline double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

inline bool is_strictly_lower_triangular(const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (m(i, j) != 0.0) return false;
    return true;
}

inline double max_abs_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "matrix comparison");
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

/// LU factorization with partial pivoting, PA = LU.
class LuFactorization {
public:
    /// Returns nullopt when a pivot falls below pivot_tol in magnitude.
    static std::optional<LuFactorization> factor(const Matrix& a, double pivot_tol = 1e-12) {
        if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "LU of non-square matrix");
        const std::size_t n = a.rows();
        LuFactorization f;
        f.lu_ = a;
        f.perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) f.perm_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(f.lu_(i, k)) > std::abs(f.lu_(p, k))) p = i;
            if (std::abs(f.lu_(p, k)) < pivot_tol) return std::nullopt;
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(f.lu_(p, j), f.lu_(k, j));
                std::swap(f.perm_[p], f.perm_[k]);
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                const double l = f.lu_(i, k) / f.lu_(k, k);
                f.lu_(i, k) = l;
                for (std::size_t j = k + 1; j < n; ++j) f.lu_(i, j) -= l * f.lu_(k, j);
            }
        }
        return f;
    }

    [[nodiscard]] Vector solve(std::span<const double> rhs) const {
        const std::size_t n = lu_.rows();
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] /= lu_(i, i);
        }
        return x;
    }

    [[nodiscard]] Matrix inverse() const {
        const std::size_t n = lu_.rows();
        Matrix inv(n, n);
        Vector e(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(e.begin(), e.end(), 0.0);
            e[j] = 1.0;
            const Vector col = solve(e);
            for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        }
        return inv;
    }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// (I + rA)^{-1}. Strictly lower triangular A takes the forward-substitution
/// path and can never be singular; otherwise partial-pivot LU is used and
/// nullopt signals a pivot below pivot_tol.
inline std::optional<Matrix> shifted_inverse(const Matrix& a, double r, double pivot_tol = 1e-12) {
    const std::size_t n = a.rows();
    if (is_strictly_lower_triangular(a)) {
        Matrix inv = Matrix::identity(n);
        // Column j of the inverse: x_i = e_ij - r * sum_{k<i} a_ik x_k.
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = j + 1; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t k = j; k < i; ++k) acc += a(i, k) * inv(k, j);
                inv(i, j) = -r * acc;
            }
        return inv;
    }
    Matrix shifted = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) shifted(i, j) += r * a(i, j);
    auto lu = LuFactorization::factor(shifted, pivot_tol);
    if (!lu) return std::nullopt;
    return lu->inverse();
}

}  // namespace sspdo
