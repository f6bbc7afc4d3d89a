#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "sspdo/bernstein.hpp"
#include "sspdo/dense_construct.hpp"
#include "sspdo/experiments.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/shu_osher.hpp"
#include "sspdo/ssp_certify.hpp"

using namespace sspdo;

// Feasibility is an interval in r: feasible on (0, 𝒞], infeasible above.
TEST(Property, FeasibleSetIsAnInterval) {
    for (const auto& e : registry::all()) {
        const double c = e.ssp_coefficient;
        for (double frac : {0.01, 0.25, 0.5, 0.9, 0.999}) {
            EXPECT_TRUE(monotonicity_feasible_method(e.tableau, frac * c).feasible) << e.key << " " << frac;
            EXPECT_TRUE(monotonicity_feasible_dense(e.tableau, *e.weights, frac * c).feasible ||
                        !e.dense_ssp_coefficient)
                << e.key;
        }
        for (double factor : {1.001, 1.5, 3.0})
            EXPECT_FALSE(monotonicity_feasible_method(e.tableau, factor * c).feasible) << e.key << " " << factor;
    }
}

TEST(Property, DenseFeasibilityImpliesMethodFeasibility) {
    // b̄(1) = b, so the dense conditions at θ = 1 contain the method conditions.
    for (const auto& e : registry::all()) {
        const double rd = dense_ssp_coefficient(e.tableau, *e.weights);
        EXPECT_LE(rd, e.ssp_coefficient + 1e-8) << e.key;
        EXPECT_TRUE(monotonicity_feasible_method(e.tableau, rd).feasible) << e.key;
    }
}

TEST(Property, StagePermutationInvariance) {
    std::mt19937 rng(20261015);
    for (const auto& e : registry::all()) {
        std::vector<std::size_t> perm(e.tableau.stages());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto pt = e.tableau.permuted(perm);
        const auto pw = e.weights->permuted(perm);
        EXPECT_NEAR(ssp_coefficient(pt), e.ssp_coefficient, 1e-8) << e.key;
        EXPECT_NEAR(dense_ssp_coefficient(pt, pw), dense_ssp_coefficient(e.tableau, *e.weights), 1e-8) << e.key;
    }
}

TEST(Property, PositiveCoefficientForcesNonnegativeWeights) {
    for (const auto& e : registry::all()) {
        if (dense_ssp_coefficient(e.tableau, *e.weights) <= 0.0) continue;
        const auto& a = e.tableau.A();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            EXPECT_GE(e.tableau.b()[i], -1e-12) << e.key;
            for (std::size_t j = 0; j < a.cols(); ++j) EXPECT_GE(a(i, j), -1e-12) << e.key;
        }
        for (int k = 0; k <= 10000; ++k)
            for (double v : e.weights->evaluate(k / 10000.0)) ASSERT_GE(v, -1e-12) << e.key << " " << k;
    }
}

TEST(Property, ResidualReportsArePermutationInvariant) {
    const std::vector<std::size_t> perm{2, 0, 1};
    for (const char* key : {"ssp322", "ssp332", "numexample-322"}) {
        const auto e = *registry::find(key);
        const auto a = dense_order_residuals(e.tableau, *e.weights);
        const auto b = dense_order_residuals(e.tableau.permuted(perm), e.weights->permuted(perm));
        ASSERT_EQ(a.conditions.size(), b.conditions.size());
        EXPECT_EQ(a.attained_order, b.attained_order);
        for (std::size_t i = 0; i < a.conditions.size(); ++i)
            EXPECT_NEAR(a.conditions[i].max_abs, b.conditions[i].max_abs, 1e-14) << key;
        EXPECT_EQ(method_order_residuals(e.tableau).attained_order,
                  method_order_residuals(e.tableau.permuted(perm)).attained_order);
    }
}

TEST(Property, SearchSolutionsObeyDerivativePins) {
    for (int s = 2; s <= 4; ++s) {
        SearchOptions o;
        o.r = s - 1;
        for (std::size_t d : {2u, 3u}) {
            o.degree = d;
            const auto t = family_tableau(s);
            const auto res = lp_search(t, o);
            ASSERT_TRUE(res.feasible()) << s << " " << d;
            EXPECT_TRUE(barrier_first_derivative(t, *res.weights, 1e-9)) << s << " " << d;
        }
    }
}

TEST(Property, ConvexCombinationWeightsSumToOne) {
    const std::vector<double> thetas{0.0, 0.13, 0.5, 0.77, 1.0};
    for (const auto& e : registry::all()) {
        const auto so = to_shu_osher(e.tableau, *e.weights, e.ssp_coefficient);
        for (double th : thetas) {
            const Vector beta = so.beta_bar.evaluate(th);
            double total = so.mu(th);
            for (double b : beta) total += b;
            EXPECT_NEAR(total, 1.0, 1e-13) << e.key << " " << th;
            // At the SSP coefficient all convex weights are nonnegative.
            if (e.dense_ssp_coefficient) {
                EXPECT_GE(so.mu(th), -1e-12) << e.key;
                for (double b : beta) EXPECT_GE(b, -1e-12) << e.key;
            }
        }
    }
}

TEST(Property, BernsteinBoundsAgreeWithSampling) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (double& x : c) x = coef(rng);
        const Polynomial p(c);
        double sampled_max = 0.0, sampled_min = p(0.0);
        for (int i = 0; i <= 10000; ++i) {
            const double v = p(i / 10000.0);
            sampled_max = std::max(sampled_max, std::abs(v));
            sampled_min = std::min(sampled_min, v);
        }
        EXPECT_LE(sampled_max, max_abs_on_unit(p).value + 1e-12) << trial;
        EXPECT_GE(sampled_max, max_abs_on_unit(p).value - 1e-6) << trial;
        EXPECT_GE(sampled_min, min_on_unit(p).value - 1e-12) << trial;
        const auto rep = poly_nonneg_on_unit(p);
        if (rep.certified()) {
            EXPECT_GE(sampled_min, -1e-15) << trial;
        }
        if (rep.status == NonnegStatus::NegativeWitness) {
            EXPECT_LT(*rep.witness_value, 0.0) << trial;
        }
    }
}

TEST(Property, InvariantIntervalIsKeptUpToForwardEulerBound) {
    // sinode has h_FE = 1, so the SSP dense output keeps [0,1] for h <= 𝒞 = 2.
    for (double h : {0.5, 1.0, 1.6, 2.0}) {
        Figure1Options o;
        o.h = h;
        o.u0_points = 41;
        o.theta_points = 41;
        const auto sum = run_figure1(o);
        EXPECT_TRUE(sum.ssp_contained) << h << " min " << sum.ssp.min << " max " << sum.ssp.max;
    }
}
