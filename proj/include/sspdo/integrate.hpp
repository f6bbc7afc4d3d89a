#pragma once

// Fixed-step explicit Runge–Kutta integration with stored stages, so dense
// output u_{n+θ} = u_n + h Σ b̄_j(θ) f(y_j) needs no extra f evaluations.

#include <algorithm>
#include <concepts>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

using State = std::vector<double>;
using RhsFunction = std::function<void(double t, std::span<const double> u, std::span<double> du)>;
using ExactFunction = std::function<State(double t, std::span<const double> u0)>;

struct Problem {
    std::string name;
    std::size_t dimension = 1;
    RhsFunction rhs;
    ExactFunction exact;   // optional; solution from t = 0
    double h_fe = 0.0;     // forward-Euler step bound for the invariant of interest, 0 if unknown
};

struct StepResult {
    State next;
    std::vector<State> stages;       // y_j
    std::vector<State> derivatives;  // f(t_n + c_j h, y_j)
};

/// One explicit step. rhs(t, u, du) writes f(t, u) into du.
template <class Rhs>
concept RhsCallable = std::invocable<Rhs&, double, std::span<const double>, std::span<double>>;

template <RhsCallable Rhs>
StepResult step(const ButcherTableau& t, Rhs&& rhs, double t_n, std::span<const double> u_n, double h) {
    if (!t.is_explicit()) throw Error(ErrorCode::InvalidArgument, "integration needs an explicit tableau");
    const std::size_t s = t.stages();
    const std::size_t dim = u_n.size();
    StepResult out;
    out.stages.assign(s, State(dim));
    out.derivatives.assign(s, State(dim));
    for (std::size_t i = 0; i < s; ++i) {
        State& y = out.stages[i];
        std::copy(u_n.begin(), u_n.end(), y.begin());
        for (std::size_t j = 0; j < i; ++j) {
            const double a = t.A()(i, j);
            if (a == 0.0) continue;
            for (std::size_t d = 0; d < dim; ++d) y[d] += h * a * out.derivatives[j][d];
        }
        rhs(t_n + t.c()[i] * h, std::span<const double>(y), std::span<double>(out.derivatives[i]));
    }
    out.next.assign(u_n.begin(), u_n.end());
    for (std::size_t j = 0; j < s; ++j) {
        const double bj = t.b()[j];
        if (bj == 0.0) continue;
        for (std::size_t d = 0; d < dim; ++d) out.next[d] += h * bj * out.derivatives[j][d];
    }
    return out;
}

inline StepResult step(const ButcherTableau& t, const Problem& p, double t_n, std::span<const double> u_n,
                       double h) {
    return step(t, p.rhs, t_n, u_n, h);
}

/// Stored trajectory of a uniform-step integration.
class Trajectory {
public:
    Trajectory(double t0, double h, State u0) : t0_(t0), h_(h) { states_.push_back(std::move(u0)); }

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] std::size_t n_steps() const noexcept { return states_.size() - 1; }
    [[nodiscard]] double time(std::size_t n) const noexcept { return t0_ + static_cast<double>(n) * h_; }
    [[nodiscard]] const State& state(std::size_t n) const { return states_.at(n); }
    [[nodiscard]] const std::vector<State>& states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<State>& stages(std::size_t n) const { return stages_.at(n); }
    [[nodiscard]] const std::vector<State>& derivatives(std::size_t n) const { return derivatives_.at(n); }

    void append(StepResult r) {
        states_.push_back(std::move(r.next));
        stages_.push_back(std::move(r.stages));
        derivatives_.push_back(std::move(r.derivatives));
    }

private:
    double t0_;
    double h_;
    std::vector<State> states_;
    std::vector<std::vector<State>> stages_;
    std::vector<std::vector<State>> derivatives_;
};

template <RhsCallable Rhs>
Trajectory integrate_fixed(const ButcherTableau& t, Rhs&& rhs, std::span<const double> u0, double t0, double h,
                           std::size_t n_steps) {
    if (!t.is_explicit()) throw Error(ErrorCode::InvalidArgument, "integration needs an explicit tableau");
    Trajectory traj(t0, h, State(u0.begin(), u0.end()));
    for (std::size_t n = 0; n < n_steps; ++n) {
        StepResult r = step(t, rhs, traj.time(n), std::span<const double>(traj.state(n)), h);
        const bool finite = std::all_of(r.next.begin(), r.next.end(), [](double v) { return std::isfinite(v); });
        if (!finite) throw Error(ErrorCode::NonfiniteState, "non-finite state after step " + std::to_string(n));
        traj.append(std::move(r));
    }
    return traj;
}

inline Trajectory integrate_fixed(const ButcherTableau& t, const Problem& p, std::span<const double> u0,
                                  double t0, double h, std::size_t n_steps) {
    if (u0.size() != p.dimension)
        throw Error(ErrorCode::DimensionMismatch, "initial state has wrong dimension for " + p.name);
    return integrate_fixed(t, p.rhs, u0, t0, h, n_steps);
}

/// u_{n+θ} on step n.
inline State dense_eval(const Trajectory& traj, const DenseWeights& w, std::size_t n, double theta) {
    if (n >= traj.n_steps())
        throw Error(ErrorCode::IndexOutOfRange,
                    "step " + std::to_string(n) + " of " + std::to_string(traj.n_steps()));
    if (!(theta >= 0.0 && theta <= 1.0))
        throw Error(ErrorCode::ThetaOutOfRange, "theta = " + std::to_string(theta));
    const auto& k = traj.derivatives(n);
    if (w.stages() != k.size()) throw Error(ErrorCode::DimensionMismatch, "weights vs stored stages");
    const Vector bt = w.evaluate(theta);
    State u = traj.state(n);
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (bt[j] == 0.0) continue;
        for (std::size_t d = 0; d < u.size(); ++d) u[d] += traj.h() * bt[j] * k[j][d];
    }
    return u;
}

struct ConvergenceStudy {
    std::vector<double> step_sizes;
    std::vector<double> step_errors;   // max over step points
    std::vector<double> dense_errors;  // max over off-step probes
    double step_order = 0.0;           // least-squares slope of log error vs log h
    double dense_order = 0.0;
};

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

inline ConvergenceStudy convergence_study(const ButcherTableau& t, const DenseWeights& w, const Problem& p,
                                          std::span<const double> u0, double t_end,
                                          std::span<const double> step_sizes, std::span<const double> thetas) {
    if (!p.exact) throw Error(ErrorCode::ExactSolutionMissing, "problem " + p.name + " has no exact solution");
    if (step_sizes.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two step sizes");
    ConvergenceStudy study;
    for (double h : step_sizes) {
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidStepSize, "h = " + std::to_string(h));
        const double steps_real = t_end / h;
        const auto n_steps = static_cast<std::size_t>(std::llround(steps_real));
        if (std::abs(steps_real - static_cast<double>(n_steps)) > 1e-9 * std::max(1.0, steps_real))
            throw Error(ErrorCode::InvalidStepSize, "t_end is not a whole number of steps of " + std::to_string(h));
        const Trajectory traj = integrate_fixed(t, p, u0, 0.0, h, n_steps);
        double step_err = 0.0, dense_err = 0.0;
        for (std::size_t n = 1; n <= n_steps; ++n) {
            const State exact = p.exact(traj.time(n), u0);
            for (std::size_t d = 0; d < exact.size(); ++d)
                step_err = std::max(step_err, std::abs(traj.state(n)[d] - exact[d]));
        }
        for (std::size_t n = 0; n < n_steps; ++n)
            for (double theta : thetas) {
                const State u = dense_eval(traj, w, n, theta);
                const State exact = p.exact(traj.time(n) + theta * h, u0);
                for (std::size_t d = 0; d < exact.size(); ++d)
                    dense_err = std::max(dense_err, std::abs(u[d] - exact[d]));
            }
        study.step_sizes.push_back(h);
        study.step_errors.push_back(step_err);
        study.dense_errors.push_back(dense_err);
    }
    study.step_order = log_log_slope(study.step_sizes, study.step_errors);
    study.dense_order = log_log_slope(study.step_sizes, study.dense_errors);
    return study;
}

}  // namespace sspdo
