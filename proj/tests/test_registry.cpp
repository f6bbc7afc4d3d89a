#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "sspdo/dense_construct.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/ssp_certify.hpp"

using namespace sspdo;

TEST(Registry, KeysAreUnique) {
    const auto keys = registry::keys();
    EXPECT_EQ(std::set<std::string>(keys.begin(), keys.end()).size(), keys.size());
    EXPECT_TRUE(registry::find("ssp322").has_value());
    EXPECT_FALSE(registry::find("rk4").has_value());
}

TEST(Registry, DocumentedOrders) {
    for (const auto& e : registry::all()) {
        EXPECT_EQ(method_order_residuals(e.tableau).attained_order, e.order) << e.key;
        EXPECT_EQ(dense_order_residuals(e.tableau, *e.weights).attained_order, e.dense_order) << e.key;
        const auto ends = endpoint_check(e.tableau, *e.weights);
        EXPECT_TRUE(ends.vanishes_at_zero && ends.matches_b_at_one) << e.key;
    }
}

TEST(Registry, DocumentedCoefficients) {
    for (const auto& e : registry::all()) {
        EXPECT_NEAR(ssp_coefficient(e.tableau), e.ssp_coefficient, 1e-8) << e.key;
        if (e.dense_ssp_coefficient) {
            EXPECT_NEAR(dense_ssp_coefficient(e.tableau, *e.weights), *e.dense_ssp_coefficient, 1e-8) << e.key;
        }
    }
}

TEST(Registry, ExampleEqualsThreeStageFamily) {
    const auto ex = registry::numexample_tableau();
    const auto fam = family_tableau(3);
    EXPECT_LT(max_abs_difference(ex.A(), fam.A()), 1e-16);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(ex.b()[j], fam.b()[j], 1e-16);
}

TEST(Registry, ExampleSspWeightsAreTheQuadraticRecipe) {
    const auto ex = registry::numexample_tableau();
    const auto w = registry::numexample_ssp_weights();
    EXPECT_LT(max_abs_difference(w.coeffs(), second_order_weights(ex).coeffs()), 1e-15);
    // b̄ = (θ − 2/3 θ², θ²/3, θ²/3)
    const oracle::Q two_thirds(2, 3), third(1, 3);
    EXPECT_NEAR(w.coeffs()(0, 2), -oracle::to_double(two_thirds), 1e-15);
    EXPECT_NEAR(w.coeffs()(1, 2), oracle::to_double(third), 1e-15);
    EXPECT_NEAR(w.coeffs()(2, 2), oracle::to_double(third), 1e-15);
}

TEST(Registry, NonSspWeightsAreOrderTwoButNotSsp) {
    const auto ex = registry::numexample_tableau();
    const auto w = registry::numexample_nonssp_weights();
    EXPECT_EQ(dense_order_residuals(ex, w).attained_order, 2);
    EXPECT_FALSE(monotonicity_feasible_dense(ex, w, 0.5).feasible);
}
