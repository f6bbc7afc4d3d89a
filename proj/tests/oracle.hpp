#pragma once

// Exact rational reference computations used as independent test oracles.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

namespace oracle {

using Q = boost::rational<std::int64_t>;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

inline double to_double(const Q& q) { return boost::rational_cast<double>(q); }

inline QMat identity(std::size_t n) {
    QMat m(n, QVec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Q(1);
    return m;
}

inline QMat multiply(const QMat& a, const QMat& b) {
    QMat out(a.size(), QVec(b.front().size(), Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

/// (I + rA)^{-1} for strictly lower triangular A, by exact forward substitution.
inline QMat shifted_inverse_lower(const QMat& a, const Q& r) {
    const std::size_t n = a.size();
    QMat inv = identity(n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t i = 0; i < n; ++i) {
            Q acc = (i == col) ? Q(1) : Q(0);
            for (std::size_t k = 0; k < i; ++k) acc -= r * a[i][k] * inv[k][col];
            inv[i][col] = acc;
        }
    return inv;
}

inline QVec row_sums(const QMat& a) {
    QVec out(a.size(), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const Q& v : a[i]) out[i] += v;
    return out;
}

/// Family member with a_ij = 1/(s−1) for j < i, b_j = 1/s.
inline QMat family_a(std::size_t s) {
    QMat a(s, QVec(s, Q(0)));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < i; ++j) a[i][j] = Q(1, static_cast<std::int64_t>(s - 1));
    return a;
}

/// b^T (I + rA)^{-1} e.
inline Q gamma(const QMat& a, const QVec& b, const Q& r) {
    const QMat m = shifted_inverse_lower(a, r);
    Q acc(0);
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t k = 0; k < b.size(); ++k) acc += b[j] * m[j][k];
    return acc;
}

/// Polynomial product on coefficient vectors (constant term first).
inline QVec poly_mul(const QVec& p, const QVec& q) {
    QVec out(p.size() + q.size() - 1, Q(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

/// Bernstein coefficients of p at its stored degree, via b_i = Σ_{k<=i} C(i,k)/C(n,k) a_k.
inline QVec bernstein(const QVec& p) {
    const std::size_t n = p.size() - 1;
    auto binom = [](std::size_t n_, std::size_t k_) {
        std::int64_t c = 1;
        for (std::size_t i = 0; i < k_; ++i) c = c * static_cast<std::int64_t>(n_ - i) / static_cast<std::int64_t>(i + 1);
        return c;
    };
    QVec b(n + 1, Q(0));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k <= i; ++k) b[i] += Q(binom(i, k), binom(n, k)) * p[k];
    return b;
}

}  // namespace oracle
