#include <gtest/gtest.h>

#include "sspdo/polynomial.hpp"

using sspdo::Polynomial;

TEST(Polynomial, HornerEvaluation) {
    const Polynomial p{1.0, -2.0, 3.0};
    EXPECT_DOUBLE_EQ(p(0.0), 1.0);
    EXPECT_DOUBLE_EQ(p(2.0), 1.0 - 4.0 + 12.0);
}

TEST(Polynomial, DerivativesAtZero) {
    const Polynomial p{0.0, 1.0, -0.5, 2.0};
    EXPECT_DOUBLE_EQ(p.derivative_at_zero(0), 0.0);
    EXPECT_DOUBLE_EQ(p.derivative_at_zero(1), 1.0);
    EXPECT_DOUBLE_EQ(p.derivative_at_zero(2), -1.0);
    EXPECT_DOUBLE_EQ(p.derivative_at_zero(3), 12.0);
    EXPECT_DOUBLE_EQ(p.derivative_at_zero(4), 0.0);
}

TEST(Polynomial, ArithmeticMatchesPointwise) {
    const Polynomial p{1.0, 2.0};
    const Polynomial q{0.0, -1.0, 1.0};
    for (double x : {-1.0, 0.0, 0.3, 1.7}) {
        EXPECT_NEAR((p + q)(x), p(x) + q(x), 1e-14);
        EXPECT_NEAR((p - q)(x), p(x) - q(x), 1e-14);
        EXPECT_NEAR((p * q)(x), p(x) * q(x), 1e-14);
        EXPECT_NEAR((2.5 * q)(x), 2.5 * q(x), 1e-14);
    }
}

TEST(Polynomial, ComposeAffineReparametrizes) {
    const Polynomial p{0.5, -1.0, 0.0, 4.0};
    const Polynomial q = p.compose_affine(0.25, 0.75);
    for (double x : {0.0, 0.1, 0.5, 1.0}) EXPECT_NEAR(q(x), p(0.25 + 0.5 * x), 1e-14);
}

TEST(Polynomial, MonomialAndZero) {
    const Polynomial m = Polynomial::monomial(3, 2.0);
    EXPECT_EQ(m.degree(), 3u);
    EXPECT_DOUBLE_EQ(m(0.5), 0.25);
    EXPECT_TRUE((m - m).is_zero());
}
