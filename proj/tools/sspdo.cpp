// sspdo: certify, construct and exercise SSP dense output from the command line.
//
// Exit codes: 0 success, 1 failed check (e.g. containment violated), 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sspdo/sspdo.hpp"

using namespace sspdo;
using nlohmann::json;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;

struct MethodSource {
    std::string tableau_path;
    std::string method_key;
    int stages = 0;  // family member, for `search`
};

struct Loaded {
    ButcherTableau tableau;
    std::optional<DenseWeights> weights;  // from the file or the registry
};

void add_method_options(CLI::App* cmd, MethodSource& src, bool allow_stages = false) {
    auto* file = cmd->add_option("--tableau", src.tableau_path, "JSON tableau file")->check(CLI::ExistingFile);
    auto* key = cmd->add_option("--method", src.method_key, "built-in method key (see `sspdo methods`)");
    file->excludes(key);
    if (allow_stages) {
        auto* stages = cmd->add_option("--stages", src.stages, "optimal second-order family member with s stages")
                           ->check(CLI::Range(2, 1000));
        stages->excludes(file)->excludes(key);
    }
}

Loaded load_method(const MethodSource& src) {
    if (!src.tableau_path.empty()) {
        auto f = load_tableau_file(src.tableau_path);
        return {std::move(f.tableau), std::move(f.weights)};
    }
    if (!src.method_key.empty()) {
        auto e = registry::find(src.method_key);
        if (!e) throw Error(ErrorCode::InvalidArgument, "unknown method \"" + src.method_key + "\"");
        return {std::move(e->tableau), std::move(e->weights)};
    }
    if (src.stages > 0) return {family_tableau(src.stages), std::nullopt};
    throw Error(ErrorCode::InvalidArgument, "give --tableau or --method");
}

/// "builtin" uses weights shipped with the method, falling back to the quadratic
/// recipe when it applies and the linear one otherwise.
DenseWeights pick_weights(const Loaded& m, const std::string& which) {
    if (which == "first") return first_order_weights(m.tableau);
    if (which == "second") return second_order_weights(m.tableau);
    if (m.weights) return *m.weights;
    return m.tableau.first_row_zero() ? second_order_weights(m.tableau) : first_order_weights(m.tableau);
}

CertifyOptions certify_options() {
    CertifyOptions opts;
    if (const char* env = std::getenv("SSPDO_TOL")) {
        try {
            opts.feasibility_tol = parse_coefficient(env);
        } catch (const Error&) {
            throw Error(ErrorCode::InvalidArgument, std::string("SSPDO_TOL is not a number: ") + env);
        }
        if (!(opts.feasibility_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "SSPDO_TOL must be >= 0");
    }
    return opts;
}

json violation_json(const Violation& v) {
    json j{{"condition", v.condition}, {"value", v.value}, {"inconclusive", v.inconclusive}};
    if (v.row) j["row"] = v.row;
    if (v.col) j["col"] = v.col;
    if (v.theta) j["theta"] = *v.theta;
    return j;
}

json violations_json(const std::vector<Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(violation_json(v));
    return out;
}

json residuals_json(const ResidualReport& rep) {
    json conds = json::array();
    for (const auto& c : rep.conditions) conds.push_back({{"condition", c.label}, {"order", c.order}, {"max_abs", c.max_abs}});
    return {{"attained_order", rep.attained_order}, {"conditions", conds}};
}

json polynomial_json(const Polynomial& p) {
    json out = json::array();
    for (double c : p.coeffs()) out.push_back(detail::coefficient_json(c));
    return out;
}

/// Prints a record as one JSON line, or as indented key: value lines.
void emit(const json& record, bool as_record) {
    if (as_record) {
        std::cout << record.dump() << '\n';
        return;
    }
    for (const auto& [k, v] : record.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

// ---- subcommands ----

struct CertifyArgs {
    MethodSource src;
    bool dense = false;
    std::string weights = "builtin";
};

int run_certify(const CertifyArgs& a, bool as_record) {
    const Loaded m = load_method(a.src);
    const CertifyOptions opts = certify_options();
    std::optional<DenseWeights> w;
    if (a.dense) w = pick_weights(m, a.weights);
    const SspCertificate cert = certify(m.tableau, w ? &*w : nullptr, opts);

    json rec{{"method", m.tableau.name()},
             {"r_method", cert.r_method},
             {"r_combined", cert.r_combined},
             {"unbounded_above", cert.unbounded_above},
             {"conservative", cert.conservative},
             {"method_witnesses", violations_json(cert.method_witnesses)}};
    if (cert.r_dense) {
        rec["r_dense"] = *cert.r_dense;
        rec["dense_witnesses"] = violations_json(cert.dense_witnesses);
    }
    if (cert.gamma) rec["gamma"] = *cert.gamma;
    if (cert.xineq) {
        rec["xineq_holds"] = cert.xineq->holds;
        rec["xineq_lhs"] = cert.xineq->lhs;
        rec["xineq_rhs"] = cert.xineq->rhs;
    }
    emit(rec, as_record);
    return 0;
}

struct ConstructArgs {
    MethodSource src;
    int order = 2;
    std::string out;
};

int run_construct(const ConstructArgs& a, bool as_record) {
    const Loaded m = load_method(a.src);
    const DenseWeights w = a.order == 1 ? first_order_weights(m.tableau) : second_order_weights(m.tableau);
    const auto ends = endpoint_check(m.tableau, w);
    json rec{{"method", m.tableau.name()},
             {"order", a.order},
             {"bbar", weights_json(w)},
             {"residuals", residuals_json(dense_order_residuals(m.tableau, w))},
             {"vanishes_at_zero", ends.vanishes_at_zero},
             {"matches_b_at_one", ends.matches_b_at_one},
             {"r_dense", dense_ssp_coefficient(m.tableau, w, certify_options())}};
    if (!a.out.empty()) {
        save_tableau_file(a.out, m.tableau, &w);
        rec["written"] = a.out;
    }
    emit(rec, as_record);
    return 0;
}

struct SearchArgs {
    MethodSource src;
    SearchOptions opts;
};

int run_search(SearchArgs a, bool as_record) {
    const Loaded m = load_method(a.src);
    a.opts.certify = certify_options();
    const SearchResult res = lp_search(m.tableau, a.opts);
    json rec{{"method", m.tableau.name()},
             {"status", res.feasible() ? "feasible" : "infeasible"},
             {"certified", res.certified},
             {"lp_feasible", res.lp_feasible},
             {"collocation_points", res.collocation_points},
             {"rounds", res.rounds},
             {"notes", res.notes}};
    if (res.violated_necessary) rec["violated_necessary"] = *res.violated_necessary;
    if (res.necessary_margin) rec["necessary_margin"] = *res.necessary_margin;
    if (res.margin_theta) rec["margin_theta"] = *res.margin_theta;
    if (res.barrier) {
        const auto& b = *res.barrier;
        json bj{{"contradiction", b.contradiction()}};
        if (b.contradiction()) {
            bj["failed_relation"] = b.failed_relation;
            bj["residual"] = b.residual;
        } else {
            bj["violated_hypothesis"] = b.violated_hypothesis;
        }
        if (b.stage) bj["stage"] = *b.stage;
        rec["barrier"] = bj;
    }
    if (res.weights) rec["bbar"] = weights_json(*res.weights);
    emit(rec, as_record);
    return 0;
}

struct ShuOsherArgs {
    MethodSource src;
    std::optional<double> C;
    std::string weights = "builtin";
};

int run_shu_osher(const ShuOsherArgs& a, bool as_record) {
    const Loaded m = load_method(a.src);
    const DenseWeights w = pick_weights(m, a.weights);
    const double c = a.C ? *a.C : dense_ssp_coefficient(m.tableau, w, certify_options());
    const ShuOsherDense so = to_shu_osher(m.tableau, w, c);
    json p = json::array();
    for (std::size_t i = 0; i < so.stage_form.P.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < so.stage_form.P.cols(); ++j) row.push_back(so.stage_form.P(i, j));
        p.push_back(row);
    }
    emit(json{{"method", m.tableau.name()},
              {"C", c},
              {"beta_bar", weights_json(so.beta_bar)},
              {"mu", polynomial_json(so.mu)},
              {"stage_v", so.stage_form.v},
              {"stage_P", p}},
         as_record);
    return 0;
}

struct IntegrateArgs {
    MethodSource src;
    std::string problem = "sinode";
    double u0 = 0.3;
    double h = 0.1;
    std::size_t steps = 10;
    std::size_t dense = 0;  // interior points per step
    std::string weights = "builtin";
};

int run_integrate(const IntegrateArgs& a, bool as_record) {
    const Loaded m = load_method(a.src);
    const auto p = problems::by_name(a.problem);
    if (!p) throw Error(ErrorCode::InvalidArgument, "unknown problem \"" + a.problem + "\"");
    if (!(a.h > 0.0)) throw Error(ErrorCode::InvalidStepSize, "h must be positive");
    const DenseWeights w = pick_weights(m, a.weights);
    const std::vector<double> init{a.u0};
    const Trajectory traj = integrate_fixed(m.tableau, *p, init, 0.0, a.h, a.steps);

    json rows = json::array();
    if (!as_record) std::cout << "t,theta_global,u,is_step_point\n";
    auto row = [&](double t, double theta_global, double u, bool step_point) {
        if (as_record) {
            rows.push_back({t, theta_global, u, step_point});
        } else {
            std::cout << format_g17(t) << ',' << format_g17(theta_global) << ',' << format_g17(u) << ','
                      << (step_point ? 1 : 0) << '\n';
        }
    };
    for (std::size_t n = 0; n <= traj.n_steps(); ++n) {
        row(traj.time(n), static_cast<double>(n), traj.state(n)[0], true);
        if (n == traj.n_steps()) break;
        for (std::size_t k = 1; k <= a.dense; ++k) {
            const double theta = static_cast<double>(k) / static_cast<double>(a.dense + 1);
            row(traj.time(n) + theta * a.h, static_cast<double>(n) + theta, dense_eval(traj, w, n, theta)[0], false);
        }
    }
    if (as_record)
        std::cout << json{{"method", m.tableau.name()},
                          {"problem", p->name},
                          {"columns", {"t", "theta_global", "u", "is_step_point"}},
                          {"rows", rows}}
                         .dump()
                  << '\n';
    return 0;
}

json extremes_json(const FormulaExtremes& e) {
    return {{"min", e.min}, {"max", e.max}, {"min_u0", e.min_u0}, {"min_t", e.min_t}};
}

struct Figure1Args {
    Figure1Options opts;
    std::string out;
};

int run_figure1_cmd(const Figure1Args& a, bool as_record) {
    std::optional<std::filesystem::path> dir;
    if (!a.out.empty()) dir = a.out;
    const Figure1Summary s = run_figure1(a.opts, dir);
    json files = json::array();
    for (const auto& f : s.files) files.push_back(f.string());
    emit(json{{"h", s.h},
              {"ssp", extremes_json(s.ssp)},
              {"nonssp", extremes_json(s.nonssp)},
              {"ssp_contained", s.ssp_contained},
              {"files", files}},
         as_record);
    return s.ssp_contained ? 0 : kExitFailedCheck;
}

int run_sweep_cmd(int s_max, bool as_record) {
    const auto rows = run_certification_sweep(s_max, certify_options());
    if (!as_record) {
        std::cout << "s,ssp_coefficient,xineq_lhs,xineq_rhs,xineq_holds,dense_ssp_coefficient,quadratic_search_feasible\n";
        for (const auto& r : rows)
            std::cout << r.stages << ',' << format_g17(r.ssp_coefficient) << ',' << format_g17(r.xineq.lhs) << ','
                      << format_g17(r.xineq.rhs) << ',' << r.xineq.holds << ','
                      << format_g17(r.dense_ssp_coefficient) << ',' << r.quadratic_search_feasible << '\n';
        return 0;
    }
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"s", r.stages},
                       {"ssp_coefficient", r.ssp_coefficient},
                       {"xineq_lhs", r.xineq.lhs},
                       {"xineq_rhs", r.xineq.rhs},
                       {"xineq_holds", r.xineq.holds},
                       {"dense_ssp_coefficient", r.dense_ssp_coefficient},
                       {"quadratic_search_feasible", r.quadratic_search_feasible}});
    std::cout << json{{"rows", out}}.dump() << '\n';
    return 0;
}

int run_convergence_cmd(double t_end, double u0, bool as_record) {
    const auto rows = run_convergence_table({0.2, 0.1, 0.05, 0.025}, t_end, u0);
    if (!as_record) {
        std::cout << "method,weights,h,step_error,dense_error\n";
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.study.step_sizes.size(); ++i)
                std::cout << r.method << ',' << r.weights << ',' << format_g17(r.study.step_sizes[i]) << ','
                          << format_g17(r.study.step_errors[i]) << ',' << format_g17(r.study.dense_errors[i]) << '\n';
        for (const auto& r : rows)
            std::cout << "# " << r.method << ' ' << r.weights << " step slope " << r.study.step_order
                      << ", dense slope " << r.study.dense_order << '\n';
        return 0;
    }
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"method", r.method},
                       {"weights", r.weights},
                       {"h", r.study.step_sizes},
                       {"step_errors", r.study.step_errors},
                       {"dense_errors", r.study.dense_errors},
                       {"step_order", r.study.step_order},
                       {"dense_order", r.study.dense_order}});
    std::cout << json{{"rows", out}}.dump() << '\n';
    return 0;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::IoError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidStepSize:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::ZeroRowViolation:
        case ErrorCode::StructureError:
        case ErrorCode::NonpositiveC:
        case ErrorCode::RepeatedAbscissae: return kExitUsage;
        default: return kExitFailedCheck;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-stability-preserving dense output for explicit Runge-Kutta methods"};
    app.require_subcommand(1);
    app.fallthrough();  // --format is accepted after the subcommand too
    app.set_help_flag("--help", "Print this help message and exit");  // frees -h for step sizes
    std::string format = "text";
    app.add_option("--format", format, "text or record (one JSON object on stdout)")
        ->check(CLI::IsMember({"text", "record"}))
        ->capture_default_str();
    const std::vector<std::string> weight_kinds{"builtin", "first", "second"};

    auto* methods_cmd = app.add_subcommand("methods", "list built-in method keys");

    CertifyArgs certify_args;
    auto* certify_cmd = app.add_subcommand("certify", "SSP coefficients of a method and its dense output");
    add_method_options(certify_cmd, certify_args.src);
    certify_cmd->add_flag("--dense", certify_args.dense, "also certify dense weights");
    certify_cmd->add_option("--weights", certify_args.weights, "builtin, first or second")
        ->check(CLI::IsMember(weight_kinds));

    ConstructArgs construct_args;
    auto* construct_cmd = app.add_subcommand("construct", "closed-form SSP dense weights");
    add_method_options(construct_cmd, construct_args.src);
    construct_cmd->add_option("--order", construct_args.order, "1 or 2")->check(CLI::IsMember({1, 2}));
    construct_cmd->add_option("--out", construct_args.out, "write the tableau with weights to this file");

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "LP search for dense weights with a target coefficient");
    add_method_options(search_cmd, search_args.src, true);
    search_cmd->add_option("--order", search_args.opts.order, "dense order 1..3")->check(CLI::Range(1, 3));
    search_cmd->add_option("--degree", search_args.opts.degree, "polynomial degree D")->check(CLI::PositiveNumber);
    search_cmd->add_option("--r", search_args.opts.r, "target coefficient")->required();
    search_cmd->add_option("--collocation", search_args.opts.collocation, "collocation points (default 2D+2)");
    search_cmd->add_option("--max-rounds", search_args.opts.max_rounds, "refinement rounds")->check(CLI::PositiveNumber);

    ShuOsherArgs so_args;
    auto* so_cmd = app.add_subcommand("shu-osher", "convex-combination form of the dense output");
    add_method_options(so_cmd, so_args.src);
    so_cmd->add_option("--C", so_args.C, "coefficient (default: dense SSP coefficient)");
    so_cmd->add_option("--weights", so_args.weights, "builtin, first or second")->check(CLI::IsMember(weight_kinds));

    IntegrateArgs int_args;
    auto* int_cmd = app.add_subcommand("integrate", "fixed-step integration with dense output (CSV)");
    add_method_options(int_cmd, int_args.src);
    int_cmd->add_option("--problem", int_args.problem, "sinode, linear or quadrature")->capture_default_str();
    int_cmd->add_option("--u0", int_args.u0, "initial value")->capture_default_str();
    int_cmd->add_option("--h", int_args.h, "step size")->capture_default_str();
    int_cmd->add_option("--steps", int_args.steps, "number of steps")->capture_default_str();
    int_cmd->add_option("--dense", int_args.dense, "interior dense points per step")->capture_default_str();
    int_cmd->add_option("--weights", int_args.weights, "builtin, first or second")->check(CLI::IsMember(weight_kinds));

    auto* exp_cmd = app.add_subcommand("experiment", "reproduction drivers");
    exp_cmd->require_subcommand(1);
    exp_cmd->fallthrough();
    Figure1Args fig_args;
    auto* fig_cmd = exp_cmd->add_subcommand("figure1", "invariant-interval study on sinode");
    fig_cmd->add_option("--h", fig_args.opts.h, "step size")->capture_default_str();
    fig_cmd->add_option("--u0-points", fig_args.opts.u0_points, "initial values on [0,1]")->capture_default_str();
    fig_cmd->add_option("--theta-points", fig_args.opts.theta_points, "dense points per step")->capture_default_str();
    fig_cmd->add_option("--steps", fig_args.opts.steps, "steps per trajectory")->capture_default_str();
    fig_cmd->add_option("--out", fig_args.out, "directory for figure1_ssp.csv and figure1_nonssp.csv");
    int s_max = 10;
    auto* sweep_cmd = exp_cmd->add_subcommand("sweep", "certification sweep over the optimal family");
    sweep_cmd->add_option("--s-max", s_max, "largest stage count")->check(CLI::Range(2, 1000))->capture_default_str();
    double t_end = 2.0, conv_u0 = 0.3;
    auto* conv_cmd = exp_cmd->add_subcommand("convergence", "step and dense convergence table on sinode");
    conv_cmd->add_option("--t-end", t_end, "final time")->capture_default_str();
    conv_cmd->add_option("--u0", conv_u0, "initial value")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const bool as_record = format == "record";
    try {
        if (*methods_cmd) {
            if (as_record) {
                std::cout << json{{"methods", registry::keys()}}.dump() << '\n';
            } else {
                for (const auto& k : registry::keys()) std::cout << k << '\n';
            }
            return 0;
        }
        if (*certify_cmd) return run_certify(certify_args, as_record);
        if (*construct_cmd) return run_construct(construct_args, as_record);
        if (*search_cmd) return run_search(search_args, as_record);
        if (*so_cmd) return run_shu_osher(so_args, as_record);
        if (*int_cmd) return run_integrate(int_args, as_record);
        if (*fig_cmd) return run_figure1_cmd(fig_args, as_record);
        if (*sweep_cmd) return run_sweep_cmd(s_max, as_record);
        if (*conv_cmd) return run_convergence_cmd(t_end, conv_u0, as_record);
    } catch (const Error& e) {
        std::cerr << "sspdo: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "sspdo: " << e.what() << '\n';
        return kExitFailedCheck;
    }
    return kExitUsage;
}
