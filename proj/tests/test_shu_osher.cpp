#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sspdo/dense_construct.hpp"
#include "sspdo/error.hpp"
#include "sspdo/problems.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/shu_osher.hpp"

using namespace sspdo;

namespace {

std::vector<double> probe_thetas() {
    std::vector<double> out;
    for (int k = 0; k <= 20; ++k) out.push_back(k / 20.0);
    return out;
}

}  // namespace

TEST(ShuOsher, Ssp222Mu) {
    const auto t = registry::ssp222();
    const auto so = to_shu_osher(t, second_order_weights(t), 1.0);
    // β̄ = (θ − θ², θ²/2), μ = 1 − θ + θ²/2.
    EXPECT_NEAR(so.mu.coeff(0), 1.0, 1e-15);
    EXPECT_NEAR(so.mu.coeff(1), -1.0, 1e-15);
    EXPECT_NEAR(so.mu.coeff(2), 0.5, 1e-15);
    EXPECT_NEAR(so.beta_bar.coeffs()(1, 2), 0.5, 1e-15);
}

TEST(ShuOsher, Ssp322AtTwo) {
    const auto t = registry::ssp322();
    const auto so = to_shu_osher(t, second_order_weights(t), 2.0);
    const auto& bb = so.beta_bar.coeffs();
    EXPECT_NEAR(bb(0, 1), 2.0, 1e-14);
    EXPECT_NEAR(bb(0, 2), -2.0, 1e-14);
    EXPECT_NEAR(bb(1, 1), 0.0, 1e-14);
    EXPECT_NEAR(bb(1, 2), 0.0, 1e-14);
    EXPECT_NEAR(bb(2, 2), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(so.mu.coeff(1), -2.0, 1e-14);
    EXPECT_NEAR(so.mu.coeff(2), 4.0 / 3.0, 1e-14);
}

TEST(ShuOsher, StageFormOfSsp322) {
    const auto form = canonical_stage_form(registry::ssp322(), 2.0);
    // y_2 = y_1 + h/2 f(y_1): P(1,0) = 1, v_1 = 0.
    EXPECT_NEAR(form.P(1, 0), 1.0, 1e-15);
    EXPECT_NEAR(form.v[1], 0.0, 1e-15);
    EXPECT_NEAR(form.v[3], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(form.P(3, 2), 2.0 / 3.0, 1e-15);
}

TEST(ShuOsher, RoundTrip) {
    for (const auto& e : registry::all()) {
        const auto so = to_shu_osher(e.tableau, *e.weights, e.ssp_coefficient);
        const auto back = dense_weights_from_shu_osher(e.tableau, so);
        EXPECT_LT(max_abs_difference(back.coeffs(), e.weights->coeffs()), 1e-13) << e.key;
    }
}

TEST(ShuOsher, StepEquivalence) {
    const auto p = problems::sinode();
    const std::vector<double> u0{0.3};
    const auto thetas = probe_thetas();
    for (const auto& e : registry::all()) {
        const double dev =
            shu_osher_step_equivalence(e.tableau, *e.weights, e.ssp_coefficient, p.rhs, 0.2, u0, 0.4, thetas);
        EXPECT_LE(dev, 1e-13) << e.key;
    }
}

TEST(ShuOsher, ButcherFromShuOsherMatchesSsp332) {
    const Matrix alpha = Matrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0.75, 0.25, 0}, {1.0 / 3.0, 0, 2.0 / 3.0}});
    const Matrix beta = Matrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 0.25, 0}, {0, 0, 2.0 / 3.0}});
    const auto t = butcher_from_shu_osher(alpha, beta);
    EXPECT_LT(max_abs_difference(t.A(), registry::ssp332().A()), 1e-15);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(t.b()[j], registry::ssp332().b()[j], 1e-15);
}

TEST(ShuOsher, Errors) {
    const auto t = registry::ssp222();
    EXPECT_THROW(to_shu_osher(t, second_order_weights(t), 0.0), Error);
    EXPECT_THROW(canonical_stage_form(t, -1.0), Error);
    const auto singular = validate_tableau(Matrix::from_rows({{-1.0}}), {1.0});
    try {
        (void)to_shu_osher(singular, first_order_weights(singular), 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
    }
    const Matrix implicit_alpha = Matrix::from_rows({{0, 0}, {0, 1}, {0.5, 0.5}});
    EXPECT_THROW(butcher_from_shu_osher(implicit_alpha, Matrix(3, 2)), Error);
    EXPECT_THROW(butcher_from_shu_osher(Matrix(2, 2), Matrix(2, 2)), Error);
}
