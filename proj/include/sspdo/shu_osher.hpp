#pragma once

// Convex-combination (Shu–Osher) form of a method with dense output:
//   u_{n+θ} = μ(θ) u_n + Σ_j β̄_j(θ) (y_j + (h/C) f(y_j)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sspdo/error.hpp"
#include "sspdo/integrate.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/polynomial.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

/// Stage recursion as convex combinations of forward-Euler substeps:
///   y_i = v_i u_n + Σ_j P_ij (y_j + (h/C) f(y_j)), rows 1..s for stages, row s+1 for u_{n+1}.
struct StageForm {
    Vector v;   // length s+1
    Matrix P;   // (s+1) x s
};

struct ShuOsherDense {
    double C = 0.0;
    DenseWeights beta_bar;
    Polynomial mu;
    StageForm stage_form;
};

/// Canonical stage form at coefficient r: P = r [A; b^T] (I + rA)^{-1}, v = 1 − P e.
inline StageForm canonical_stage_form(const ButcherTableau& t, double r) {
    if (!(r > 0.0)) throw Error(ErrorCode::NonpositiveC, "stage form needs r > 0");
    const auto m = shifted_inverse(t.A(), r);
    if (!m) throw Error(ErrorCode::SingularMatrix, "I + rA is singular");
    const std::size_t s = t.stages();
    Matrix k(s + 1, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) k(i, j) = t.A()(i, j);
    for (std::size_t j = 0; j < s; ++j) k(s, j) = t.b()[j];
    StageForm form;
    form.P = k * *m;
    for (std::size_t i = 0; i <= s; ++i)
        for (std::size_t j = 0; j < s; ++j) form.P(i, j) *= r;
    form.v = row_sums(form.P);
    for (double& x : form.v) x = 1.0 - x;
    return form;
}

inline ShuOsherDense to_shu_osher(const ButcherTableau& t, const DenseWeights& w, double C) {
    if (!(C > 0.0)) throw Error(ErrorCode::NonpositiveC, "C must be positive");
    if (w.stages() != t.stages()) throw Error(ErrorCode::DimensionMismatch, "weights vs tableau stages");
    const auto m = shifted_inverse(t.A(), C);
    if (!m) throw Error(ErrorCode::SingularMatrix, "I + C A is singular");
    const std::size_t s = t.stages();
    const std::size_t width = w.coeffs().cols();
    Matrix beta(s, width);
    // Column k of β̄ is C M^T (column k of b̄).
    for (std::size_t k = 0; k < width; ++k)
        for (std::size_t col = 0; col < s; ++col) {
            double acc = 0.0;
            for (std::size_t j = 0; j < s; ++j) acc += w.coeffs()(j, k) * (*m)(j, col);
            beta(col, k) = C * acc;
        }
    std::vector<double> mu(width, 0.0);
    mu[0] = 1.0;
    for (std::size_t k = 0; k < width; ++k)
        for (std::size_t j = 0; j < s; ++j) mu[k] -= beta(j, k);

    ShuOsherDense out;
    out.C = C;
    out.beta_bar = DenseWeights(std::move(beta));
    out.mu = Polynomial(std::move(mu));
    out.stage_form = canonical_stage_form(t, C);
    return out;
}

/// Inverse map b̄ = (1/C)(I + C A)^T β̄.
inline DenseWeights dense_weights_from_shu_osher(const ButcherTableau& t, const ShuOsherDense& so) {
    const std::size_t s = t.stages();
    const Matrix& beta = so.beta_bar.coeffs();
    Matrix out(s, beta.cols());
    for (std::size_t k = 0; k < beta.cols(); ++k)
        for (std::size_t j = 0; j < s; ++j) {
            double acc = beta(j, k);
            for (std::size_t i = 0; i < s; ++i) acc += so.C * t.A()(i, j) * beta(i, k);
            out(j, k) = acc / so.C;
        }
    return DenseWeights(std::move(out));
}

/// Butcher form of an explicit stage recursion  y_i = v_i u_n + Σ_j (α_ij y_j + h β_ij f(y_j)),
/// given as (s+1)-row arrays whose last row produces u_{n+1}.
inline ButcherTableau butcher_from_shu_osher(const Matrix& alpha, const Matrix& beta, std::string name = {}) {
    const std::size_t s = alpha.cols();
    if (alpha.rows() != s + 1 || beta.rows() != s + 1 || beta.cols() != s)
        throw Error(ErrorCode::DimensionMismatch, "Shu-Osher arrays must be (s+1) x s");
    Matrix a(s, s);
    // Row i of A = β_i + Σ_j α_ij A_j; explicit recursions resolve row by row.
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t col = 0; col < s; ++col) {
            double acc = beta(i, col);
            for (std::size_t j = 0; j < i; ++j) acc += alpha(i, j) * a(j, col);
            for (std::size_t j = i; j < s; ++j)
                if (alpha(i, j) != 0.0)
                    throw Error(ErrorCode::StructureError, "Shu-Osher recursion must be explicit");
            a(i, col) = acc;
        }
    Vector b(s);
    for (std::size_t col = 0; col < s; ++col) {
        double acc = beta(s, col);
        for (std::size_t j = 0; j < s; ++j) acc += alpha(s, j) * a(j, col);
        b[col] = acc;
    }
    return validate_tableau(a, b, std::move(name));
}

/// Max deviation between the dense output computed from the Butcher weights and
/// from the convex-combination form, on one step from (t_n, u_n).
template <RhsCallable Rhs>
double shu_osher_step_equivalence(const ButcherTableau& t, const DenseWeights& w, double C, Rhs&& rhs,
                                  double t_n, std::span<const double> u_n, double h,
                                  std::span<const double> thetas) {
    const ShuOsherDense so = to_shu_osher(t, w, C);
    const StepResult st = step(t, rhs, t_n, u_n, h);
    const std::size_t dim = u_n.size();
    double worst = 0.0;
    for (double theta : thetas) {
        const Vector bt = w.evaluate(theta);
        const Vector beta = so.beta_bar.evaluate(theta);
        const double mu = so.mu(theta);
        for (std::size_t d = 0; d < dim; ++d) {
            double butcher = u_n[d];
            double convex = mu * u_n[d];
            for (std::size_t j = 0; j < t.stages(); ++j) {
                butcher += h * bt[j] * st.derivatives[j][d];
                convex += beta[j] * (st.stages[j][d] + (h / C) * st.derivatives[j][d]);
            }
            worst = std::max(worst, std::abs(butcher - convex) / (1.0 + std::abs(butcher)));
        }
    }
    return worst;
}

}  // namespace sspdo
