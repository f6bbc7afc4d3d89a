#pragma once

// Construction of SSP dense-output weights, executable non-existence
// barriers, and a collocation LP search for general polynomial weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sspdo/bernstein.hpp"
#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/polynomial.hpp"
#include "sspdo/simplex.hpp"
#include "sspdo/ssp_certify.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

/// b̄_j(θ) = b_j θ. Keeps 𝒞(A,b̄) = 𝒞(A,b) for any method of order >= 1.
inline DenseWeights first_order_weights(const ButcherTableau& t) {
    Matrix m(t.stages(), 2);
    for (std::size_t j = 0; j < t.stages(); ++j) m(j, 1) = t.b()[j];
    return DenseWeights(std::move(m));
}

/// b̄_1(θ) = θ − (1 − b_1)θ², b̄_j(θ) = b_j θ² (j >= 2). Requires a zero first row of A.
inline DenseWeights second_order_weights(const ButcherTableau& t) {
    if (!t.first_row_zero())
        throw Error(ErrorCode::StructureError,
                    "second-order SSP dense output needs the first row of A to be identically zero");
    Matrix m(t.stages(), 3);
    m(0, 1) = 1.0;
    m(0, 2) = -(1.0 - t.b()[0]);
    for (std::size_t j = 1; j < t.stages(); ++j) m(j, 2) = t.b()[j];
    return DenseWeights(std::move(m));
}

/// Optimal s-stage second-order SSP method: a_ij = 1/(s−1) for j < i, b_j = 1/s.
inline ButcherTableau family_tableau(int s) {
    if (s < 2) throw Error(ErrorCode::InvalidArgument, "family needs s >= 2 (abscissas divide by s-1)");
    const auto n = static_cast<std::size_t>(s);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) a(i, j) = 1.0 / static_cast<double>(s - 1);
    return validate_tableau(a, Vector(n, 1.0 / static_cast<double>(s)), "family-s" + std::to_string(s));
}

/// Stage count s when t is the optimal second-order family member, else nullopt.
inline std::optional<int> family_stage_count(const ButcherTableau& t, double tol = kExactTol) {
    const auto s = static_cast<int>(t.stages());
    if (s < 2) return std::nullopt;
    const ButcherTableau ref = family_tableau(s);
    if (max_abs_difference(ref.A(), t.A()) > tol) return std::nullopt;
    for (std::size_t j = 0; j < t.stages(); ++j)
        if (std::abs(ref.b()[j] - t.b()[j]) > tol) return std::nullopt;
    return s;
}

/// Necessary first-derivative pins for order-2 SSP dense output:
/// b̄'_1(0) = 1 and b̄'_j(0) = 0 for j >= 2.
inline bool barrier_first_derivative(const ButcherTableau& t, const DenseWeights& w, double tol = kExactTol) {
    if (w.stages() != t.stages()) throw Error(ErrorCode::DimensionMismatch, "weights vs tableau stages");
    if (w.degree() < 1) return false;
    if (std::abs(w.coeffs()(0, 1) - 1.0) > tol) return false;
    for (std::size_t j = 1; j < w.stages(); ++j)
        if (std::abs(w.coeffs()(j, 1)) > tol) return false;
    return true;
}

struct BarrierVerdict {
    enum class Kind { Contradiction, NotApplicable };
    Kind kind = Kind::NotApplicable;
    // Contradiction: the first relation (implied by an order-3 claim plus the
    // hypotheses) that the weights fail, and its residual.
    std::string failed_relation;
    double residual = 0.0;
    // NotApplicable: the hypothesis that does not hold.
    std::string violated_hypothesis;
    std::optional<std::size_t> stage;   // 1-based
    std::optional<double> witness_theta;

    [[nodiscard]] bool contradiction() const noexcept { return kind == Kind::Contradiction; }
};

/// Walks the chain of derivative relations at θ = 0 that an order-3 claim
/// would force on weights which are nonnegative near zero with nonnegative
/// distinct abscissas. Under those hypotheses some link always fails.
inline BarrierVerdict quadrature_barrier_order3(std::span<const double> c, const DenseWeights& w,
                                                double near_zero = 0.1, double tol = 1e-12) {
    if (c.size() != w.stages()) throw Error(ErrorCode::DimensionMismatch, "abscissas vs weights");
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (std::abs(c[i] - c[j]) <= kExactTol)
                throw Error(ErrorCode::RepeatedAbscissae,
                            "c_" + std::to_string(i + 1) + " = c_" + std::to_string(j + 1));

    BarrierVerdict v;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] < 0.0) {
            v.violated_hypothesis = "negative abscissa";
            v.stage = j + 1;
            return v;
        }
    }
    for (std::size_t j = 0; j < w.stages(); ++j) {
        const auto rep = poly_nonneg_on_interval(w.weight(j), 0.0, near_zero);
        if (!rep.certified()) {
            v.violated_hypothesis = rep.status == NonnegStatus::NegativeWitness
                                        ? "weight negative near zero"
                                        : "weight nonnegativity near zero not certified";
            v.stage = j + 1;
            v.witness_theta = rep.witness_theta;
            return v;
        }
    }

    v.kind = BarrierVerdict::Kind::Contradiction;
    for (std::size_t j = 0; j < w.stages(); ++j) {
        if (std::abs(w.coeffs()(j, 0)) > tol) {
            v.failed_relation = "bbar_j(0) = 0";
            v.stage = j + 1;
            v.residual = w.coeffs()(j, 0);
            return v;
        }
    }
    double d1 = 0.0, d2c2 = 0.0, d2c = 0.0;
    for (std::size_t j = 0; j < w.stages(); ++j) {
        const Polynomial p = w.weight(j);
        d1 += p.derivative_at_zero(1) * c[j];
        d2c2 += p.derivative_at_zero(2) * c[j] * c[j];
        d2c += p.derivative_at_zero(2) * c[j];
    }
    if (std::abs(d1) > tol) {
        v.failed_relation = "sum bbar_j'(0) c_j = 0";
        v.residual = d1;
        return v;
    }
    if (std::abs(d2c2) > tol) {
        v.failed_relation = "sum bbar_j''(0) c_j^2 = 0";
        v.residual = d2c2;
        return v;
    }
    v.failed_relation = "sum bbar_j''(0) c_j = 1";
    v.residual = d2c - 1.0;
    return v;
}

enum class SearchStatus { Feasible, Infeasible };

struct SearchResult {
    SearchStatus status = SearchStatus::Infeasible;
    std::optional<DenseWeights> weights;
    bool certified = false;
    bool lp_feasible = false;                     // verdict of the simplex alone
    std::optional<std::string> violated_necessary; // pre-screen cause
    std::optional<double> necessary_margin;        // e.g. b̄_1(θ*) − 1/r for the optimal family
    std::optional<double> margin_theta;
    std::optional<BarrierVerdict> barrier;         // order-3 requests
    std::size_t collocation_points = 0;
    int rounds = 0;
    std::vector<std::string> notes;

    [[nodiscard]] bool feasible() const noexcept { return status == SearchStatus::Feasible; }
};

struct SearchOptions {
    int order = 2;
    std::size_t degree = 2;
    double r = 1.0;
    std::size_t collocation = 0;  // 0 => 2D + 2
    int max_rounds = 4;
    CertifyOptions certify{};
    SimplexOptions simplex{};
};

/// Chebyshev–Lobatto points on [0,1]; both endpoints included.
inline std::vector<double> collocation_points(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two collocation points");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
        pts[i] = 0.5 * (1.0 - x);
    }
    pts.front() = 0.0;
    pts.back() = 1.0;
    return pts;
}

namespace detail {

inline std::size_t lp_index(std::size_t stage, std::size_t k, std::size_t degree) {
    return stage * degree + (k - 1);
}

/// Bernstein coefficients (degree D) of c·θ^q.
inline std::vector<double> monomial_bernstein(std::size_t q, double c, std::size_t degree) {
    std::vector<double> mono(degree + 1, 0.0);
    mono[q] = c;
    return to_bernstein(Polynomial(std::move(mono)));
}

/// Builds the collocation LP. The unknowns are the degree-D Bernstein coefficients
/// β_{j,k}, k = 1..D, of each weight (β_{j,0} = b̄_j(0) = 0); matching Bernstein
/// coefficients is equivalent to matching monomial coefficients, and the
/// collocation rows stay well scaled.
inline LinearConstraints assemble_dense_lp(const ButcherTableau& t, const Matrix& m, const SearchOptions& o,
                                           std::span<const double> thetas) {
    const std::size_t s = t.stages();
    const std::size_t d = o.degree;
    LinearConstraints lp;
    lp.variables = s * d;
    const auto& c = t.c();
    const Vector ac = t.A() * std::span<const double>(c);

    auto add_condition = [&](const Vector& weight_per_stage, std::size_t target_power, double target) {
        if (target_power > d) {
            // The θ^q coefficient has no unknown to match it: the row reads 0 = target.
            lp.add_equality(Vector(lp.variables, 0.0), target);
            target = 0.0;
            target_power = d;
        }
        const std::vector<double> rhs = monomial_bernstein(target_power, target, d);
        for (std::size_t k = 1; k <= d; ++k) {
            Vector row(lp.variables, 0.0);
            for (std::size_t j = 0; j < s; ++j) row[lp_index(j, k, d)] = weight_per_stage[j];
            lp.add_equality(std::move(row), rhs[k]);
        }
    };
    Vector ones(s, 1.0), c2(s);
    for (std::size_t j = 0; j < s; ++j) c2[j] = c[j] * c[j];
    if (o.order >= 1) add_condition(ones, 1, 1.0);
    if (o.order >= 2) add_condition(c, 2, 0.5);
    if (o.order >= 3) {
        add_condition(c2, 3, 1.0 / 3.0);
        add_condition(ac, 3, 1.0 / 6.0);
    }

    // b̄'_j(0) = D β_{j,1}; with β_{j,1} = 0, b̄''_j(0) = D(D−1) β_{j,2}.
    if (o.order >= 2) {
        for (std::size_t j = 0; j < s; ++j) {
            Vector row(lp.variables, 0.0);
            row[lp_index(j, 1, d)] = 1.0;
            lp.add_equality(std::move(row), j == 0 ? 1.0 / static_cast<double>(d) : 0.0);
        }
        if (d >= 2)
            for (std::size_t j = 1; j < s; ++j) {
                Vector row(lp.variables, 0.0);
                row[lp_index(j, 2, d)] = -1.0;
                lp.add_less_equal(std::move(row), 0.0);
            }
    } else {
        // b̄_j(0) = 0 and b̄_j >= 0 near zero force b̄'_j(0) >= 0.
        for (std::size_t j = 0; j < s; ++j) {
            Vector row(lp.variables, 0.0);
            row[lp_index(j, 1, d)] = -1.0;
            lp.add_less_equal(std::move(row), 0.0);
        }
    }

    const Vector me = row_sums(m);
    std::vector<double> basis(d + 1);
    for (double theta : thetas) {
        if (theta == 0.0) continue;  // every constraint reads 0 <= 0 or 0 <= 1 there
        for (std::size_t k = 0; k <= d; ++k) basis[k] = bernstein_basis(d, k, theta);
        // b̄_j(θ) >= 0
        for (std::size_t j = 0; j < s; ++j) {
            Vector row(lp.variables, 0.0);
            for (std::size_t k = 1; k <= d; ++k) row[lp_index(j, k, d)] = -basis[k];
            lp.add_less_equal(std::move(row), 0.0);
        }
        // (b̄(θ)^T M)_col >= 0
        for (std::size_t col = 0; col < s; ++col) {
            Vector row(lp.variables, 0.0);
            for (std::size_t j = 0; j < s; ++j)
                for (std::size_t k = 1; k <= d; ++k) row[lp_index(j, k, d)] = -basis[k] * m(j, col);
            lp.add_less_equal(std::move(row), 0.0);
        }
        // r b̄(θ)^T M e <= 1
        Vector row(lp.variables, 0.0);
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 1; k <= d; ++k) row[lp_index(j, k, d)] = o.r * basis[k] * me[j];
        lp.add_less_equal(std::move(row), 1.0);
    }
    return lp;
}

inline DenseWeights weights_from_solution(const Vector& x, std::size_t stages, std::size_t degree) {
    Matrix m(stages, degree + 1);
    std::vector<double> bern(degree + 1);
    for (std::size_t j = 0; j < stages; ++j) {
        bern[0] = 0.0;
        for (std::size_t k = 1; k <= degree; ++k) bern[k] = x[lp_index(j, k, degree)];
        const Polynomial p = from_bernstein(bern);
        for (std::size_t k = 0; k <= degree; ++k) m(j, k) = p.coeff(k);
    }
    return DenseWeights(std::move(m));
}

}  // namespace detail

/// Searches for degree-D weights of the requested order with 𝒞(A,b̄) >= r.
inline SearchResult lp_search(const ButcherTableau& t, const SearchOptions& opts) {
    if (opts.order < 1 || opts.order > 3) throw Error(ErrorCode::InvalidArgument, "order must be 1, 2 or 3");
    if (opts.degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
    if (!(opts.r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r must be positive");
    const std::size_t min_points = 2 * opts.degree + 2;
    if (opts.collocation != 0 && opts.collocation < min_points)
        throw Error(ErrorCode::InvalidArgument,
                    "need at least 2D+2 = " + std::to_string(min_points) + " collocation points");

    SearchResult result;
    std::size_t n = opts.collocation == 0 ? min_points : opts.collocation;
    result.collocation_points = n;

    const double method_c = ssp_coefficient(t, opts.certify);
    if (method_c < opts.r)
        result.notes.push_back("requested r exceeds the method's SSP coefficient " + std::to_string(method_c));

    // Pre-screen with closed-form necessary conditions.
    auto screen_out = [&](std::string cause) {
        if (!result.violated_necessary) result.violated_necessary = std::move(cause);
    };
    const auto m = shifted_inverse(t.A(), opts.r);
    if (!m) {
        result.violated_necessary = "I + rA is singular";
        return result;
    }
    if (const auto a_rep = monotonicity_feasible_method(t, opts.r, opts.certify); !a_rep.feasible) {
        const bool a_condition = std::any_of(a_rep.violations.begin(), a_rep.violations.end(),
                                             [](const Violation& v) { return v.condition.starts_with("A") ||
                                                                             v.condition.starts_with("rA"); });
        if (a_condition) screen_out("A(I+rA)^-1 conditions fail at r");
    }
    if (opts.degree < static_cast<std::size_t>(opts.order))
        screen_out("degree " + std::to_string(opts.degree) + " is below the requested order");
    if (opts.order >= 2 && !t.first_row_zero())
        screen_out("first row of A is not identically zero (required for order >= 2)");

    if (opts.order == 2 && opts.degree == 2) {
        if (const auto s = family_stage_count(t); s && std::abs(opts.r - (*s - 1)) <= 1e-9) {
            // Only candidate: b̄_1 = θ − (s−1)/s θ², b̄_j = θ²/s; it must obey b̄_1 <= 1/r.
            const double sd = *s;
            const double theta_star = sd / (2.0 * (sd - 1.0));
            const double b1 = theta_star - (sd - 1.0) / sd * theta_star * theta_star;
            result.margin_theta = theta_star;
            result.necessary_margin = b1 - 1.0 / opts.r;
            if (*result.necessary_margin > 1e-12)
                screen_out("bbar_1(theta*) exceeds 1/r for the unique quadratic candidate");
        }
    }

    if (opts.order == 3 && opts.degree >= 2 && t.first_row_zero()) {
        // Run the barrier on the best order-2 candidate the same LP admits.
        SearchOptions relaxed = opts;
        relaxed.order = 2;
        relaxed.collocation = n;
        relaxed.max_rounds = 1;
        const auto thetas = collocation_points(n);
        const auto lp2 = detail::assemble_dense_lp(t, *m, relaxed, thetas);
        const auto sol = find_feasible_point(lp2, opts.simplex);
        if (sol.feasible) {
            const DenseWeights candidate = detail::weights_from_solution(sol.x, t.stages(), opts.degree);
            try {
                result.barrier = quadrature_barrier_order3(t.c(), candidate);
                if (result.barrier->contradiction())
                    screen_out("order-3 claim contradicts " + result.barrier->failed_relation);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::RepeatedAbscissae) throw;
                result.notes.push_back("quadrature barrier skipped: repeated abscissas");
            }
        } else {
            result.notes.push_back("no order-2 candidate exists, so the order-3 barrier was not evaluated");
        }
    }

    // The simplex runs regardless, so its verdict stands independently of the pre-screen.
    for (int round = 0; round < std::max(1, opts.max_rounds); ++round) {
        result.rounds = round + 1;
        result.collocation_points = n;
        const auto thetas = collocation_points(n);
        const auto lp = detail::assemble_dense_lp(t, *m, opts, thetas);
        const auto sol = find_feasible_point(lp, opts.simplex);
        result.lp_feasible = sol.feasible;
        if (!sol.feasible) {
            result.weights.reset();
            result.certified = false;
            break;
        }
        DenseWeights w = detail::weights_from_solution(sol.x, t.stages(), opts.degree);
        const auto cert = monotonicity_feasible_dense(t, w, opts.r, opts.certify);
        const auto residuals = dense_order_residuals(t, w, 1e-10);
        result.weights = std::move(w);
        result.certified = cert.feasible && residuals.attained_order >= opts.order;
        if (result.certified) break;
        if (round + 1 < opts.max_rounds) n *= 2;
    }

    if (result.lp_feasible && !result.violated_necessary) {
        result.status = SearchStatus::Feasible;
        if (!result.certified)
            result.notes.push_back("collocation solution not certified on [0,1]; retry with more collocation points");
    } else {
        result.status = SearchStatus::Infeasible;
        if (result.lp_feasible && result.violated_necessary)
            result.notes.push_back("LP feasible at collocation points but a necessary condition fails");
    }
    return result;
}

}  // namespace sspdo
