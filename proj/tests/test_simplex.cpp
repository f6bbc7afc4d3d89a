#include <gtest/gtest.h>

#include "sspdo/error.hpp"
#include "sspdo/simplex.hpp"

using namespace sspdo;

TEST(Simplex, FindsPointInBox) {
    LinearConstraints lp;
    lp.variables = 2;
    lp.add_less_equal({1, 0}, 1);
    lp.add_less_equal({-1, 0}, 0);
    lp.add_less_equal({0, 1}, 2);
    lp.add_less_equal({0, -1}, -1);  // y >= 1
    lp.add_equality({1, 1}, 2);
    const auto r = find_feasible_point(lp);
    ASSERT_TRUE(r.feasible);
    EXPECT_LE(constraint_violation(lp, r.x), 1e-12);
}

TEST(Simplex, DetectsInfeasibility) {
    LinearConstraints lp;
    lp.variables = 1;
    lp.add_less_equal({1}, 1);
    lp.add_less_equal({-1}, -2);  // x >= 2
    EXPECT_FALSE(find_feasible_point(lp).feasible);
}

TEST(Simplex, InconsistentEqualitiesAreInfeasible) {
    LinearConstraints lp;
    lp.variables = 2;
    lp.add_equality({1, 1}, 1);
    lp.add_equality({2, 2}, 3);
    EXPECT_FALSE(find_feasible_point(lp).feasible);
}

TEST(Simplex, RedundantEqualitiesAreTolerated) {
    LinearConstraints lp;
    lp.variables = 3;
    lp.add_equality({1, 1, 0}, 1);
    lp.add_equality({2, 2, 0}, 2);
    lp.add_equality({0, 0, 1}, -4);
    const auto r = find_feasible_point(lp);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.x[2], -4.0, 1e-12);
}

TEST(Simplex, FreeVariablesTakeNegativeValues) {
    LinearConstraints lp;
    lp.variables = 1;
    lp.add_equality({1}, -3.5);
    const auto r = find_feasible_point(lp);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.x[0], -3.5, 1e-12);
}

TEST(Simplex, DegenerateVertexDoesNotCycle) {
    // Many constraints active at the origin.
    LinearConstraints lp;
    lp.variables = 3;
    for (int i = 1; i <= 20; ++i) lp.add_less_equal({-1.0 * i, 1.0, 0.5 * i}, 0);
    lp.add_equality({1, 1, 1}, 0);
    const auto r = find_feasible_point(lp);
    ASSERT_TRUE(r.feasible);
    EXPECT_LE(constraint_violation(lp, r.x), 1e-12);
}

TEST(Simplex, RowLengthChecked) {
    LinearConstraints lp;
    lp.variables = 2;
    EXPECT_THROW(lp.add_equality({1}, 0), Error);
}
