#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sspdo/error.hpp"
#include "sspdo/experiments.hpp"

using namespace sspdo;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Figure1, DefaultRunSeparatesFormulas) {
    const auto sum = run_figure1();
    EXPECT_TRUE(sum.ssp_contained);
    EXPECT_GE(sum.ssp.min, -1e-12);
    EXPECT_LE(sum.ssp.max, 1.0 + 1e-12);
    EXPECT_LT(sum.nonssp.min, -0.1);
}

TEST(Figure1, CsvIsDeterministic) {
    Figure1Options o;
    o.u0_points = 5;
    o.theta_points = 4;
    o.steps = 2;
    const auto base = std::filesystem::temp_directory_path() / "sspdo_figure1_test";
    const auto a = run_figure1(o, base / "a");
    const auto b = run_figure1(o, base / "b");
    ASSERT_EQ(a.files.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string ta = slurp(a.files[i]);
        EXPECT_EQ(ta, slurp(b.files[i]));
        EXPECT_EQ(ta.rfind("u0,t,theta,u,formula\n", 0), 0u);
        // header + 5 u0 × 2 steps × 4 θ
        EXPECT_EQ(std::count(ta.begin(), ta.end(), '\n'), 41);
    }
    std::filesystem::remove_all(base);
}

TEST(Figure1, RejectsNonpositiveStep) {
    Figure1Options o;
    o.h = 0.0;
    try {
        (void)run_figure1(o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidStepSize);
    }
}

TEST(Sweep, FamilyRows) {
    const auto rows = run_certification_sweep(6);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.ssp_coefficient, r.stages - 1, 1e-8);
        EXPECT_EQ(r.xineq.holds, r.stages <= 4);
        EXPECT_EQ(r.quadratic_search_feasible, r.stages <= 4);
        if (r.stages <= 4) {
            EXPECT_NEAR(r.dense_ssp_coefficient, r.stages - 1, 1e-8);
        } else {
            EXPECT_LT(r.dense_ssp_coefficient, r.stages - 1 - 1e-3);
        }
    }
    EXPECT_THROW(run_certification_sweep(1), Error);
}

TEST(ConvergenceTable, ShapeAndRates) {
    const auto rows = run_convergence_table();
    ASSERT_EQ(rows.size(), 6u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.study.step_errors.size(), 4u);
        // Global dense error behaves like h^min(p, pbar + 1).
        const int p = r.method == "ssp332" ? 3 : 2;
        const int pbar = r.weights == "second-order" ? 2 : 1;
        EXPECT_NEAR(r.study.dense_order, std::min(p, pbar + 1), 0.2) << r.method << " " << r.weights;
        EXPECT_NEAR(r.study.step_order, p, 0.2) << r.method;
    }
}
