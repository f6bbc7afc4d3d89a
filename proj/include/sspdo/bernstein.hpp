#pragma once

// Nonnegativity certification on [0,1] via Bernstein coefficients with
// de Casteljau subdivision, plus critical-point search for sup norms.

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sspdo/error.hpp"
#include "sspdo/polynomial.hpp"

namespace sspdo {

inline constexpr std::size_t kMaxBernsteinDegree = 64;

/// Bernstein coefficients of p on [0,1] for degree n = p.size() - 1.
inline std::vector<double> to_bernstein(const Polynomial& p) {
    const std::size_t n = p.degree();
    if (n > kMaxBernsteinDegree)
        throw Error(ErrorCode::DegreeTooHigh, "degree " + std::to_string(n) + " exceeds 64");
    if (p.size() == 0) return {0.0};
    // b_i = sum_{k<=i} C(i,k)/C(n,k) a_k
    std::vector<double> b(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        long double acc = 0.0L;
        long double ratio = 1.0L;  // C(i,k)/C(n,k), starting at k = 0
        for (std::size_t k = 0; k <= i; ++k) {
            acc += ratio * static_cast<long double>(p.coeff(k));
            ratio *= static_cast<long double>(i - k) / static_cast<long double>(n - k);
        }
        b[i] = static_cast<double>(acc);
    }
    return b;
}

/// Monomial form of Σ_k b_k C(n,k) t^k (1 − t)^{n−k}, n = b.size() − 1.
inline Polynomial from_bernstein(std::span<const double> b) {
    if (b.empty()) return Polynomial{0.0};
    const std::size_t n = b.size() - 1;
    std::vector<long double> a(n + 1, 0.0L);
    long double c_nk = 1.0L;  // C(n,k)
    for (std::size_t k = 0; k <= n; ++k) {
        long double c_mi = 1.0L;  // C(n−k, i)
        for (std::size_t i = 0; i + k <= n; ++i) {
            const long double sign = (i % 2 == 0) ? 1.0L : -1.0L;
            a[k + i] += static_cast<long double>(b[k]) * c_nk * c_mi * sign;
            c_mi = c_mi * static_cast<long double>(n - k - i) / static_cast<long double>(i + 1);
        }
        c_nk = c_nk * static_cast<long double>(n - k) / static_cast<long double>(k + 1);
    }
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = static_cast<double>(a[k]);
    return Polynomial(std::move(out));
}

/// B_{k,n}(t) = C(n,k) t^k (1 − t)^{n−k}.
inline double bernstein_basis(std::size_t n, std::size_t k, double t) {
    double c = 1.0;
    for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c * std::pow(t, static_cast<double>(k)) * std::pow(1.0 - t, static_cast<double>(n - k));
}

/// Splits Bernstein coefficients at t; returns (left, right) coefficient sets.
inline std::pair<std::vector<double>, std::vector<double>> de_casteljau_split(
    std::span<const double> b, double t = 0.5) {
    const std::size_t n = b.size();
    std::vector<double> work(b.begin(), b.end());
    std::vector<double> left(n), right(n);
    for (std::size_t level = 0; level < n; ++level) {
        left[level] = work.front();
        right[n - 1 - level] = work[n - 1 - level];
        for (std::size_t i = 0; i + 1 < n - level; ++i) work[i] = (1.0 - t) * work[i] + t * work[i + 1];
    }
    return {std::move(left), std::move(right)};
}

enum class NonnegStatus { Certified, NegativeWitness, Inconclusive };

struct PolyNonnegReport {
    NonnegStatus status = NonnegStatus::Certified;
    std::optional<double> witness_theta;
    std::optional<double> witness_value;
    int depth = 0;

    [[nodiscard]] bool certified() const noexcept { return status == NonnegStatus::Certified; }
};

struct NonnegOptions {
    // Bernstein coefficients >= -slack count as nonnegative.
    double slack = 0.0;
    // An endpoint value below -max(threshold, slack) is a witness candidate.
    double witness_threshold = 1e-15;
    int max_depth = 40;
};

namespace detail {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of p at a binary floating point x (both are exact rationals).
inline Rational exact_eval(const Polynomial& p, double x) {
    const Rational rx(x);
    Rational acc(0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * rx + Rational(p.coeff(k));
    return acc;
}

}  // namespace detail

/// Decides p >= 0 on [lo, hi] (defaults to the unit interval).
inline PolyNonnegReport poly_nonneg_on_interval(const Polynomial& p, double lo, double hi,
                                                const NonnegOptions& opts = {}) {
    if (p.degree() > kMaxBernsteinDegree)
        throw Error(ErrorCode::DegreeTooHigh, "degree " + std::to_string(p.degree()) + " exceeds 64");
    PolyNonnegReport report;
    if (p.is_zero()) return report;

    const Polynomial local = (lo == 0.0 && hi == 1.0) ? p : p.compose_affine(lo, hi);
    const double threshold = std::max(opts.witness_threshold, opts.slack);
    const detail::Rational exact_threshold(-threshold);

    struct Piece {
        std::vector<double> coeffs;
        double a, b;  // subinterval of [0,1] in local coordinates
        int depth;
    };
    std::vector<Piece> stack;
    stack.push_back({to_bernstein(local), 0.0, 1.0, 0});
    bool inconclusive = false;

    auto confirm = [&](double t) -> bool {
        const double theta = lo + (hi - lo) * t;
        // lo + (hi-lo)t is exact for dyadic t on the unit interval; otherwise the
        // exact evaluation is still of the polynomial at the reported theta.
        if (detail::exact_eval(p, theta) < exact_threshold) {
            report.status = NonnegStatus::NegativeWitness;
            report.witness_theta = theta;
            report.witness_value = p(theta);
            return true;
        }
        return false;
    };

    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        report.depth = std::max(report.depth, piece.depth);

        if (piece.coeffs.front() < -threshold && confirm(piece.a)) return report;
        if (piece.coeffs.back() < -threshold && confirm(piece.b)) return report;

        const double min_coeff = *std::min_element(piece.coeffs.begin(), piece.coeffs.end());
        if (min_coeff >= -opts.slack) continue;
        if (piece.depth >= opts.max_depth) {
            inconclusive = true;
            continue;
        }
        auto [left, right] = de_casteljau_split(piece.coeffs);
        const double mid = 0.5 * (piece.a + piece.b);
        // Right half pushed first so the left half is explored first.
        stack.push_back({std::move(right), mid, piece.b, piece.depth + 1});
        stack.push_back({std::move(left), piece.a, mid, piece.depth + 1});
    }
    report.status = inconclusive ? NonnegStatus::Inconclusive : NonnegStatus::Certified;
    return report;
}

inline PolyNonnegReport poly_nonneg_on_unit(const Polynomial& p, const NonnegOptions& opts = {}) {
    return poly_nonneg_on_interval(p, 0.0, 1.0, opts);
}

/// Real roots of p in [0,1], isolated by Bernstein sign variations and refined
/// by bisection. Clusters narrower than ~1e-14 are reported once at their midpoint.
inline std::vector<double> roots_on_unit(const Polynomial& p) {
    std::vector<double> roots;
    if (p.is_zero()) return roots;

    struct Piece {
        std::vector<double> coeffs;
        double a, b;
        int depth;
    };
    std::vector<Piece> stack;
    stack.push_back({to_bernstein(p), 0.0, 1.0, 0});

    auto sign_changes = [](std::span<const double> b) {
        int changes = 0;
        double prev = 0.0;
        for (double v : b) {
            if (v == 0.0) continue;
            if (prev != 0.0 && ((v > 0) != (prev > 0))) ++changes;
            prev = v;
        }
        return changes;
    };

    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        const int changes = sign_changes(piece.coeffs);
        const bool endpoint_zero = piece.coeffs.front() == 0.0 || piece.coeffs.back() == 0.0;
        if (changes == 0 && !endpoint_zero) continue;
        if (changes == 0 && endpoint_zero) {
            if (piece.coeffs.front() == 0.0) roots.push_back(piece.a);
            if (piece.coeffs.back() == 0.0) roots.push_back(piece.b);
            continue;
        }
        const double fa = p(piece.a);
        const double fb = p(piece.b);
        if (changes == 1 && fa * fb < 0.0) {
            double a = piece.a, b = piece.b, va = fa;
            while (b - a > 1e-16 && b - a > 4 * std::numeric_limits<double>::epsilon() * std::abs(a)) {
                const double m = 0.5 * (a + b);
                const double vm = p(m);
                if (vm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((vm > 0) == (va > 0)) {
                    a = m;
                    va = vm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
            continue;
        }
        if (piece.b - piece.a < 1e-14 || piece.depth > 60) {
            roots.push_back(0.5 * (piece.a + piece.b));
            continue;
        }
        auto [left, right] = de_casteljau_split(piece.coeffs);
        const double mid = 0.5 * (piece.a + piece.b);
        stack.push_back({std::move(right), mid, piece.b, piece.depth + 1});
        stack.push_back({std::move(left), piece.a, mid, piece.depth + 1});
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

struct Extremum {
    double value = 0.0;
    double theta = 0.0;
};

/// max |p(θ)| over [0,1], located among endpoints and critical points.
inline Extremum max_abs_on_unit(const Polynomial& p) {
    Extremum best{std::abs(p(0.0)), 0.0};
    auto consider = [&](double t) {
        const double v = std::abs(p(t));
        if (v > best.value) best = {v, t};
    };
    consider(1.0);
    if (p.degree() >= 2) {
        for (double t : roots_on_unit(p.derivative())) consider(t);
    }
    return best;
}

/// min p(θ) over [0,1].
inline Extremum min_on_unit(const Polynomial& p) {
    Extremum best{p(0.0), 0.0};
    auto consider = [&](double t) {
        const double v = p(t);
        if (v < best.value) best = {v, t};
    };
    consider(1.0);
    if (p.degree() >= 2) {
        for (double t : roots_on_unit(p.derivative())) consider(t);
    }
    return best;
}

}  // namespace sspdo
