#pragma once

// Experiment drivers: invariant-interval reproduction on the sinode problem,
// the family certification sweep, and convergence tables.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sspdo/dense_construct.hpp"
#include "sspdo/error.hpp"
#include "sspdo/integrate.hpp"
#include "sspdo/problems.hpp"
#include "sspdo/registry.hpp"
#include "sspdo/ssp_certify.hpp"

namespace sspdo {

struct Figure1Options {
    double h = 1.6;
    std::size_t u0_points = 101;
    std::size_t theta_points = 101;
    std::size_t steps = 7;
    double containment_tol = 1e-12;
};

struct FormulaExtremes {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double min_u0 = 0.0;  // witness of the minimum
    double min_t = 0.0;
};

struct Figure1Summary {
    double h = 0.0;
    FormulaExtremes ssp;
    FormulaExtremes nonssp;
    bool ssp_contained = false;  // SSP values within [−tol, 1 + tol]
    std::vector<std::filesystem::path> files;
};

inline std::string format_g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Integrates the 3-stage example over a grid of initial values and evaluates the SSP and
/// non-SSP dense outputs on every step. Writes figure1_ssp.csv and figure1_nonssp.csv into
/// out_dir when given.
inline Figure1Summary run_figure1(const Figure1Options& opts = {},
                                  const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
    if (!(opts.h > 0.0)) throw Error(ErrorCode::InvalidStepSize, "h must be positive, got " + format_g17(opts.h));
    if (opts.u0_points < 2 || opts.theta_points < 2)
        throw Error(ErrorCode::InvalidArgument, "grids need at least two points");

    const ButcherTableau t = registry::numexample_tableau();
    const DenseWeights ssp = registry::numexample_ssp_weights();
    const DenseWeights nonssp = registry::numexample_nonssp_weights();
    const Problem p = problems::sinode();

    std::ofstream ssp_out, nonssp_out;
    Figure1Summary summary;
    summary.h = opts.h;
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        summary.files = {*out_dir / "figure1_ssp.csv", *out_dir / "figure1_nonssp.csv"};
        ssp_out.open(summary.files[0]);
        nonssp_out.open(summary.files[1]);
        if (!ssp_out || !nonssp_out) throw Error(ErrorCode::IoError, "cannot write into " + out_dir->string());
        ssp_out << "u0,t,theta,u,formula\n";
        nonssp_out << "u0,t,theta,u,formula\n";
    }

    auto record = [](FormulaExtremes& e, double u, double u0, double time) {
        if (u < e.min) {
            e.min = u;
            e.min_u0 = u0;
            e.min_t = time;
        }
        e.max = std::max(e.max, u);
    };

    for (std::size_t i = 0; i < opts.u0_points; ++i) {
        const double u0 = static_cast<double>(i) / static_cast<double>(opts.u0_points - 1);
        const State init{u0};
        const Trajectory traj = integrate_fixed(t, p, init, 0.0, opts.h, opts.steps);
        for (std::size_t n = 0; n < traj.n_steps(); ++n)
            for (std::size_t k = 0; k < opts.theta_points; ++k) {
                const double theta = static_cast<double>(k) / static_cast<double>(opts.theta_points - 1);
                const double time = traj.time(n) + theta * opts.h;
                const double us = dense_eval(traj, ssp, n, theta)[0];
                const double un = dense_eval(traj, nonssp, n, theta)[0];
                record(summary.ssp, us, u0, time);
                record(summary.nonssp, un, u0, time);
                if (out_dir) {
                    const std::string prefix = format_g17(u0) + "," + format_g17(time) + "," + format_g17(theta) + ",";
                    ssp_out << prefix << format_g17(us) << ",ssp\n";
                    nonssp_out << prefix << format_g17(un) << ",nonssp\n";
                }
            }
    }
    summary.ssp_contained =
        summary.ssp.min >= -opts.containment_tol && summary.ssp.max <= 1.0 + opts.containment_tol;
    return summary;
}

struct SweepRow {
    int stages = 0;
    double ssp_coefficient = 0.0;
    XineqReport xineq;
    double dense_ssp_coefficient = 0.0;  // second-order weights
    bool quadratic_search_feasible = false;
};

inline std::vector<SweepRow> run_certification_sweep(int s_max, const CertifyOptions& opts = {}) {
    if (s_max < 2) throw Error(ErrorCode::InvalidArgument, "s_max must be >= 2");
    std::vector<SweepRow> rows;
    for (int s = 2; s <= s_max; ++s) {
        const ButcherTableau t = family_tableau(s);
        SweepRow row;
        row.stages = s;
        row.ssp_coefficient = ssp_coefficient(t, opts);
        row.xineq = check_xineq(t, opts);
        row.dense_ssp_coefficient = dense_ssp_coefficient(t, second_order_weights(t), opts);
        SearchOptions search;
        search.order = 2;
        search.degree = 2;
        search.r = static_cast<double>(s - 1);
        search.certify = opts;
        row.quadratic_search_feasible = lp_search(t, search).feasible();
        rows.push_back(row);
    }
    return rows;
}

struct ConvergenceRow {
    std::string method;
    std::string weights;
    ConvergenceStudy study;
};

/// Step and dense-output convergence on sinode for the second-order registry
/// methods with first- and second-order weights.
inline std::vector<ConvergenceRow> run_convergence_table(const std::vector<double>& step_sizes = {0.2, 0.1, 0.05,
                                                                                                   0.025},
                                                         double t_end = 2.0, double u0 = 0.3) {
    const Problem p = problems::sinode();
    const State init{u0};
    std::vector<double> thetas;
    for (int k = 1; k < 10; ++k) thetas.push_back(k / 10.0);
    std::vector<ConvergenceRow> rows;
    for (const auto& key : {"ssp222", "ssp322", "ssp332"}) {
        const ButcherTableau t = registry::find(key)->tableau;
        rows.push_back({key, "first-order", convergence_study(t, first_order_weights(t), p, init, t_end,
                                                                step_sizes, thetas)});
        rows.push_back({key, "second-order", convergence_study(t, second_order_weights(t), p, init, t_end,
                                                                 step_sizes, thetas)});
    }
    return rows;
}

}  // namespace sspdo
