#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sspdo/bernstein.hpp"
#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/polynomial.hpp"

namespace sspdo {

/// Threshold for treating an order condition or identity as exactly satisfied.
inline constexpr double kExactTol = 1e-13;

struct TableauChecks {
    // Reject tableaux with a zero row anywhere but row 1, or more than one.
    bool require_leading_zero_row_only = true;
};

/// Runge–Kutta coefficients (A, b) with abscissas c = A·e.
class ButcherTableau {
public:
    ButcherTableau() = default;

    [[nodiscard]] std::size_t stages() const noexcept { return b_.size(); }
    [[nodiscard]] const Matrix& A() const noexcept { return a_; }
    [[nodiscard]] const Vector& b() const noexcept { return b_; }
    [[nodiscard]] const Vector& c() const noexcept { return c_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool is_explicit() const noexcept { return explicit_; }

    [[nodiscard]] bool row_is_zero(std::size_t i) const noexcept {
        const auto r = a_.row(i);
        return std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; });
    }
    [[nodiscard]] bool first_row_zero() const noexcept { return stages() > 0 && row_is_zero(0); }

    /// Stage reordering: new stage i is old stage perm[i]. The result skips the
    /// zero-row placement check, since a permutation generally moves it.
    [[nodiscard]] ButcherTableau permuted(std::span<const std::size_t> perm) const;

    friend ButcherTableau validate_tableau(const Matrix& a, const Vector& b, std::string name,
                                           TableauChecks checks);

private:
    Matrix a_;
    Vector b_;
    Vector c_;
    std::string name_;
    bool explicit_ = false;
};

/// Builds a tableau, recomputing c and enforcing the zero-row placement rule.
inline ButcherTableau validate_tableau(const Matrix& a, const Vector& b, std::string name = {},
                                       TableauChecks checks = {}) {
    if (!a.is_square())
        throw Error(ErrorCode::DimensionMismatch,
                    "A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected square");
    if (a.rows() != b.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "b has " + std::to_string(b.size()) + " entries, A has " + std::to_string(a.rows()) + " rows");
    if (b.empty()) throw Error(ErrorCode::DimensionMismatch, "tableau has zero stages");

    ButcherTableau t;
    t.a_ = a;
    t.b_ = b;
    t.c_ = row_sums(a);
    t.name_ = std::move(name);
    t.explicit_ = is_strictly_lower_triangular(a);

    if (checks.require_leading_zero_row_only) {
        std::vector<std::size_t> zero_rows;
        for (std::size_t i = 0; i < t.stages(); ++i)
            if (t.row_is_zero(i)) zero_rows.push_back(i);
        const bool bad = zero_rows.size() > 1 || (zero_rows.size() == 1 && zero_rows.front() != 0);
        if (bad) {
            std::string rows;
            for (std::size_t i : zero_rows) rows += (rows.empty() ? "" : ", ") + std::to_string(i + 1);
            throw Error(ErrorCode::ZeroRowViolation,
                        "zero rows of A at {" + rows + "}; only row 1 may be identically zero");
        }
    }
    return t;
}

inline ButcherTableau ButcherTableau::permuted(std::span<const std::size_t> perm) const {
    const std::size_t s = stages();
    if (perm.size() != s) throw Error(ErrorCode::DimensionMismatch, "permutation length");
    Matrix a(s, s);
    Vector b(s);
    for (std::size_t i = 0; i < s; ++i) {
        b[i] = b_[perm[i]];
        for (std::size_t j = 0; j < s; ++j) a(i, j) = a_(perm[i], perm[j]);
    }
    return validate_tableau(a, b, name_, TableauChecks{.require_leading_zero_row_only = false});
}

/// Polynomial weights b̄_j(θ) = Σ_k coeffs(j,k) θ^k, one row per stage.
class DenseWeights {
public:
    DenseWeights() = default;
    explicit DenseWeights(Matrix coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "dense weights need degree >= 0");
    }

    static DenseWeights zero(std::size_t stages, std::size_t degree) {
        return DenseWeights(Matrix(stages, degree + 1));
    }

    static DenseWeights from_polynomials(std::span<const Polynomial> weights) {
        std::size_t width = 1;
        for (const auto& p : weights) width = std::max(width, p.size());
        Matrix m(weights.size(), width);
        for (std::size_t j = 0; j < weights.size(); ++j)
            for (std::size_t k = 0; k < weights[j].size(); ++k) m(j, k) = weights[j].coeff(k);
        return DenseWeights(std::move(m));
    }

    [[nodiscard]] std::size_t stages() const noexcept { return coeffs_.rows(); }
    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.cols() - 1; }
    [[nodiscard]] const Matrix& coeffs() const noexcept { return coeffs_; }

    [[nodiscard]] Polynomial weight(std::size_t j) const {
        const auto r = coeffs_.row(j);
        return Polynomial(std::vector<double>(r.begin(), r.end()));
    }

    [[nodiscard]] Vector evaluate(double theta) const {
        Vector out(stages());
        for (std::size_t j = 0; j < stages(); ++j) {
            double acc = 0.0;
            for (std::size_t k = coeffs_.cols(); k-- > 0;) acc = acc * theta + coeffs_(j, k);
            out[j] = acc;
        }
        return out;
    }

    /// Same weights stored with degree D (pads with zeros; truncation must drop zeros only).
    [[nodiscard]] DenseWeights with_degree(std::size_t degree) const {
        Matrix m(stages(), degree + 1);
        for (std::size_t j = 0; j < stages(); ++j)
            for (std::size_t k = 0; k < coeffs_.cols(); ++k) {
                if (k <= degree) {
                    m(j, k) = coeffs_(j, k);
                } else if (coeffs_(j, k) != 0.0) {
                    throw Error(ErrorCode::InvalidArgument, "cannot lower degree past a nonzero coefficient");
                }
            }
        return DenseWeights(std::move(m));
    }

    [[nodiscard]] DenseWeights permuted(std::span<const std::size_t> perm) const {
        Matrix m(stages(), coeffs_.cols());
        for (std::size_t i = 0; i < stages(); ++i)
            for (std::size_t k = 0; k < coeffs_.cols(); ++k) m(i, k) = coeffs_(perm[i], k);
        return DenseWeights(std::move(m));
    }

private:
    Matrix coeffs_;
};

struct ConditionResidual {
    std::string label;  // e.g. "sum b_j c_j = 1/2"
    int order = 1;      // order the condition belongs to
    Polynomial residual;
    double max_abs = 0.0;  // sup over [0,1]; for constants, |value|
};

struct ResidualReport {
    std::vector<ConditionResidual> conditions;
    int attained_order = 0;
    double tolerance = kExactTol;

    [[nodiscard]] const ConditionResidual& at(std::size_t i) const { return conditions.at(i); }
};

namespace detail {

inline int attained_order(const std::vector<ConditionResidual>& conditions, double tol) {
    int order = 0;
    for (int p = 1; p <= 3; ++p) {
        const bool ok = std::all_of(conditions.begin(), conditions.end(), [&](const ConditionResidual& r) {
            return r.order != p || r.max_abs < tol;
        });
        if (!ok) break;
        order = p;
    }
    return order;
}

inline Vector a_times_c(const ButcherTableau& t) { return t.A() * std::span<const double>(t.c()); }

}  // namespace detail

/// Residuals of the classical order conditions through order three.
inline ResidualReport method_order_residuals(const ButcherTableau& t, double tol = kExactTol) {
    const auto& b = t.b();
    const auto& c = t.c();
    const Vector ac = detail::a_times_c(t);
    double r1 = -1.0, r2 = -0.5, r3 = -1.0 / 3.0, r4 = 0.0;
    for (std::size_t j = 0; j < t.stages(); ++j) {
        r1 += b[j];
        r2 += b[j] * c[j];
        r3 += b[j] * c[j] * c[j];
        r4 += b[j] * (0.5 * c[j] * c[j] - ac[j]);
    }
    ResidualReport report;
    report.tolerance = tol;
    auto add = [&](std::string label, int order, double value) {
        report.conditions.push_back({std::move(label), order, Polynomial{value}, std::abs(value)});
    };
    add("sum b_j = 1", 1, r1);
    add("sum b_j c_j = 1/2", 2, r2);
    add("sum b_j c_j^2 = 1/3", 3, r3);
    add("sum b_j (c_j^2/2 - sum_k a_jk c_k) = 0", 3, r4);
    report.attained_order = detail::attained_order(report.conditions, tol);
    return report;
}

/// Residual polynomials of the dense-output order conditions through order three.
inline ResidualReport dense_order_residuals(const ButcherTableau& t, const DenseWeights& w,
                                            double tol = kExactTol) {
    if (w.stages() != t.stages())
        throw Error(ErrorCode::DimensionMismatch, "weights have " + std::to_string(w.stages()) +
                                                      " rows, tableau has " + std::to_string(t.stages()) +
                                                      " stages");
    const auto& c = t.c();
    const Vector ac = detail::a_times_c(t);
    Polynomial p1 = Polynomial::monomial(1, -1.0);
    Polynomial p2 = Polynomial::monomial(2, -0.5);
    Polynomial p3 = Polynomial::monomial(3, -1.0 / 3.0);
    Polynomial p4 = Polynomial::monomial(3, -1.0 / 6.0);
    for (std::size_t j = 0; j < t.stages(); ++j) {
        const Polynomial bj = w.weight(j);
        p1 += bj;
        p2 += bj * c[j];
        p3 += bj * (c[j] * c[j]);
        p4 += bj * ac[j];
    }
    ResidualReport report;
    report.tolerance = tol;
    auto add = [&](std::string label, int order, Polynomial p) {
        const double m = max_abs_on_unit(p).value;
        report.conditions.push_back({std::move(label), order, std::move(p), m});
    };
    add("sum bbar_j(t) = t", 1, std::move(p1));
    add("sum bbar_j(t) c_j = t^2/2", 2, std::move(p2));
    add("sum bbar_j(t) c_j^2 = t^3/3", 3, std::move(p3));
    add("sum bbar_j(t) a_jk c_k = t^3/6", 3, std::move(p4));
    report.attained_order = detail::attained_order(report.conditions, tol);
    return report;
}

struct EndpointFlags {
    bool vanishes_at_zero = false;   // b̄_j(0) = 0 for all j
    bool matches_b_at_one = false;   // b̄_j(1) = b_j for all j
};

inline EndpointFlags endpoint_check(const ButcherTableau& t, const DenseWeights& w, double tol = kExactTol) {
    if (w.stages() != t.stages()) throw Error(ErrorCode::DimensionMismatch, "weights vs tableau stages");
    EndpointFlags flags{true, true};
    const Vector at_one = w.evaluate(1.0);
    for (std::size_t j = 0; j < t.stages(); ++j) {
        if (std::abs(w.coeffs()(j, 0)) > tol) flags.vanishes_at_zero = false;
        if (std::abs(at_one[j] - t.b()[j]) > tol) flags.matches_b_at_one = false;
    }
    return flags;
}

}  // namespace sspdo
