#pragma once

// Absolute-monotonicity feasibility and the SSP coefficients derived from it:
//   method:  A(I+rA)^{-1} >= 0, rA(I+rA)^{-1}e <= 1, b^T(I+rA)^{-1} >= 0, r b^T(I+rA)^{-1}e <= 1
//   dense:   the A conditions plus, for every θ in [0,1],
//            b̄(θ)^T(I+rA)^{-1} >= 0 and r b̄(θ)^T(I+rA)^{-1}e <= 1.
// The θ-conditions are decided by Bernstein certification of exact polynomial
// coefficients, never by sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sspdo/bernstein.hpp"
#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/polynomial.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

struct CertifyOptions {
    double bisection_tol = 1e-10;
    double feasibility_tol = 1e-12;  // >= 0 checks allow -tol, <= 1 checks allow 1 + tol
    double r_floor = 1e-10;          // infeasible here => coefficient is 0
    double r_cap = 1e6;
    int max_bernstein_depth = 40;
};

struct Violation {
    std::string condition;          // "A(I+rA)^-1 >= 0", "b(θ)^T M >= 0", ...
    std::size_t row = 0;            // 1-based; 0 when not applicable
    std::size_t col = 0;            // 1-based; 0 when not applicable
    double value = 0.0;
    std::optional<double> theta;    // for θ-dependent conditions
    bool inconclusive = false;      // Bernstein hit max depth without a witness
};

struct FeasibilityReport {
    double r = 0.0;
    bool feasible = true;
    bool singular = false;          // (I + rA) not invertible
    bool inconclusive = false;      // some θ-condition unresolved at max depth
    std::vector<Violation> violations;
};

namespace detail {

inline void check_a_conditions(const ButcherTableau& t, const Matrix& m, double r, double tol,
                               FeasibilityReport& out) {
    const Matrix k = t.A() * m;
    const Vector ke = row_sums(k);
    for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < k.cols(); ++j)
            if (k(i, j) < -tol) out.violations.push_back({"A(I+rA)^-1 >= 0", i + 1, j + 1, k(i, j), {}, false});
        if (r * ke[i] > 1.0 + tol)
            out.violations.push_back({"rA(I+rA)^-1 e <= 1", i + 1, 0, r * ke[i], {}, false});
    }
}

inline void check_nonneg_poly(const Polynomial& p, const std::string& label, std::size_t index,
                              const CertifyOptions& opts, FeasibilityReport& out) {
    const auto rep = poly_nonneg_on_unit(
        p, NonnegOptions{.slack = opts.feasibility_tol,
                         .witness_threshold = opts.feasibility_tol,
                         .max_depth = opts.max_bernstein_depth});
    if (rep.status == NonnegStatus::NegativeWitness) {
        out.violations.push_back({label, index, 0, *rep.witness_value, rep.witness_theta, false});
    } else if (rep.status == NonnegStatus::Inconclusive) {
        out.inconclusive = true;
        out.violations.push_back({label, index, 0, 0.0, {}, true});
    }
}

}  // namespace detail

/// Method conditions at a single r.
inline FeasibilityReport monotonicity_feasible_method(const ButcherTableau& t, double r,
                                                      const CertifyOptions& opts = {}) {
    if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "r must be nonnegative");
    FeasibilityReport out;
    out.r = r;
    const auto m = shifted_inverse(t.A(), r);
    if (!m) {
        out.feasible = false;
        out.singular = true;
        return out;
    }
    const double tol = opts.feasibility_tol;
    detail::check_a_conditions(t, *m, r, tol, out);
    const Vector bm = left_multiply(t.b(), *m);
    for (std::size_t j = 0; j < bm.size(); ++j)
        if (bm[j] < -tol) out.violations.push_back({"b^T(I+rA)^-1 >= 0", 0, j + 1, bm[j], {}, false});
    const double rbme = r * sum(bm);
    if (rbme > 1.0 + tol) out.violations.push_back({"r b^T(I+rA)^-1 e <= 1", 0, 0, rbme, {}, false});
    out.feasible = out.violations.empty();
    return out;
}

/// The components of b̄(θ)^T M as polynomials in θ.
inline std::vector<Polynomial> transformed_weights(const DenseWeights& w, const Matrix& m) {
    const std::size_t s = w.stages();
    const std::size_t width = w.coeffs().cols();
    std::vector<Polynomial> out;
    out.reserve(s);
    for (std::size_t col = 0; col < s; ++col) {
        std::vector<double> coeffs(width, 0.0);
        for (std::size_t j = 0; j < s; ++j) {
            const double mj = m(j, col);
            if (mj == 0.0) continue;
            for (std::size_t k = 0; k < width; ++k) coeffs[k] += w.coeffs()(j, k) * mj;
        }
        out.emplace_back(std::move(coeffs));
    }
    return out;
}

/// Dense conditions at a single r.
inline FeasibilityReport monotonicity_feasible_dense(const ButcherTableau& t, const DenseWeights& w, double r,
                                                     const CertifyOptions& opts = {}) {
    if (w.stages() != t.stages()) throw Error(ErrorCode::DimensionMismatch, "weights vs tableau stages");
    if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "r must be nonnegative");
    FeasibilityReport out;
    out.r = r;
    const auto m = shifted_inverse(t.A(), r);
    if (!m) {
        out.feasible = false;
        out.singular = true;
        return out;
    }
    detail::check_a_conditions(t, *m, r, opts.feasibility_tol, out);
    const auto parts = transformed_weights(w, *m);
    Polynomial bound{1.0};
    for (std::size_t j = 0; j < parts.size(); ++j) {
        detail::check_nonneg_poly(parts[j], "bbar(t)^T(I+rA)^-1 >= 0", j + 1, opts, out);
        bound -= r * parts[j];
    }
    detail::check_nonneg_poly(bound, "1 - r bbar(t)^T(I+rA)^-1 e >= 0", 0, opts, out);
    out.feasible = out.violations.empty();
    return out;
}

struct CoefficientEstimate {
    double value = 0.0;
    bool unbounded_above = false;  // still feasible at r_cap
    bool conservative = false;     // some probe was inconclusive and treated as infeasible
    FeasibilityReport first_infeasible;  // probe just above the returned value
};

/// sup{r >= 0 : feasible(r)} by geometric growth then bisection, with both
/// ends post-verified so a non-interval feasible set surfaces as an error.
inline CoefficientEstimate bisect_feasibility(const std::function<FeasibilityReport(double)>& probe,
                                              const CertifyOptions& opts = {}) {
    CoefficientEstimate est;
    auto feasible = [&](double r) {
        FeasibilityReport rep = probe(r);
        if (rep.inconclusive) est.conservative = true;
        return rep;
    };

    FeasibilityReport floor_rep = feasible(opts.r_floor);
    if (!floor_rep.feasible) {
        est.value = 0.0;
        est.first_infeasible = std::move(floor_rep);
        return est;
    }
    double lo = opts.r_floor;
    double hi = 1.0;
    FeasibilityReport hi_rep;
    while (true) {
        hi_rep = feasible(hi);
        if (!hi_rep.feasible) break;
        lo = hi;
        if (hi >= opts.r_cap) {
            est.value = opts.r_cap;
            est.unbounded_above = true;
            return est;
        }
        hi = std::min(hi * 2.0, opts.r_cap);
    }
    while (hi - lo > opts.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        FeasibilityReport rep = feasible(mid);
        if (rep.feasible) {
            lo = mid;
        } else {
            hi = mid;
            hi_rep = std::move(rep);
        }
    }
    est.value = lo;

    if (!probe(lo).feasible)
        throw Error(ErrorCode::NonIntervalFeasibility, "returned value " + std::to_string(lo) + " is infeasible");
    const double above = lo * (1.0 + 1e-8) + 1e-8;
    FeasibilityReport above_rep = probe(above);
    if (above_rep.feasible)
        throw Error(ErrorCode::NonIntervalFeasibility,
                    "feasible at " + std::to_string(above) + " beyond bisection result " + std::to_string(lo));
    est.first_infeasible = std::move(above_rep);
    return est;
}

inline CoefficientEstimate ssp_coefficient_estimate(const ButcherTableau& t, const CertifyOptions& opts = {}) {
    return bisect_feasibility([&](double r) { return monotonicity_feasible_method(t, r, opts); }, opts);
}

/// 𝒞(A,b).
inline double ssp_coefficient(const ButcherTableau& t, const CertifyOptions& opts = {}) {
    return ssp_coefficient_estimate(t, opts).value;
}

inline CoefficientEstimate dense_ssp_coefficient_estimate(const ButcherTableau& t, const DenseWeights& w,
                                                          const CertifyOptions& opts = {}) {
    if (w.stages() != t.stages()) throw Error(ErrorCode::DimensionMismatch, "weights vs tableau stages");
    return bisect_feasibility([&](double r) { return monotonicity_feasible_dense(t, w, r, opts); }, opts);
}

/// 𝒞(A,b̄).
inline double dense_ssp_coefficient(const ButcherTableau& t, const DenseWeights& w,
                                    const CertifyOptions& opts = {}) {
    return dense_ssp_coefficient_estimate(t, w, opts).value;
}

/// γ = b^T(I+rA)^{-1}e.
inline double gamma_at(const ButcherTableau& t, double r) {
    const auto m = shifted_inverse(t.A(), r);
    if (!m) throw Error(ErrorCode::SingularMatrix, "I + rA singular at r = " + std::to_string(r));
    return sum(left_multiply(t.b(), *m));
}

struct XineqReport {
    bool holds = false;
    double lhs = 0.0;   // b^T(I + 𝒞A)^{-1}e
    double rhs = 0.0;   // 1 - 𝒞/4
    double ssp_coefficient = 0.0;
};

/// Sufficient condition under which the quadratic recipe keeps the full coefficient.
inline XineqReport check_xineq(const ButcherTableau& t, const CertifyOptions& opts = {}, double tol = 1e-9) {
    XineqReport rep;
    rep.ssp_coefficient = ssp_coefficient(t, opts);
    if (rep.ssp_coefficient <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "condition requires a positive SSP coefficient");
    rep.lhs = gamma_at(t, rep.ssp_coefficient);
    rep.rhs = 1.0 - rep.ssp_coefficient / 4.0;
    rep.holds = rep.lhs - rep.rhs <= tol;
    return rep;
}

struct SspCertificate {
    double r_method = 0.0;
    std::optional<double> r_dense;
    double r_combined = 0.0;
    std::optional<double> gamma;          // at r = r_method, when r_method > 0
    std::optional<XineqReport> xineq;     // when r_method > 0
    bool unbounded_above = false;
    bool conservative = false;
    std::vector<Violation> method_witnesses;
    std::vector<Violation> dense_witnesses;
};

inline SspCertificate certify(const ButcherTableau& t, const DenseWeights* w = nullptr,
                              const CertifyOptions& opts = {}) {
    SspCertificate cert;
    const CoefficientEstimate method = ssp_coefficient_estimate(t, opts);
    cert.r_method = method.value;
    cert.unbounded_above = method.unbounded_above;
    cert.method_witnesses = method.first_infeasible.violations;
    cert.r_combined = cert.r_method;
    if (cert.r_method > 0.0 && !method.unbounded_above) {
        cert.gamma = gamma_at(t, cert.r_method);
        XineqReport x;
        x.ssp_coefficient = cert.r_method;
        x.lhs = *cert.gamma;
        x.rhs = 1.0 - cert.r_method / 4.0;
        x.holds = x.lhs - x.rhs <= 1e-9;
        cert.xineq = x;
    }
    if (w != nullptr) {
        const CoefficientEstimate dense = dense_ssp_coefficient_estimate(t, *w, opts);
        cert.r_dense = dense.value;
        cert.conservative = dense.conservative;
        cert.unbounded_above = cert.unbounded_above || dense.unbounded_above;
        cert.dense_witnesses = dense.first_infeasible.violations;
        cert.r_combined = std::min(cert.r_method, dense.value);
    }
    return cert;
}

}  // namespace sspdo
