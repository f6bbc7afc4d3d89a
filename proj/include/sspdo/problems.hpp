#pragma once

// Built-in test problems.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "sspdo/integrate.hpp"

namespace sspdo::problems {

/// u' = sin(10 t) u (1 − u). [0,1] is invariant; forward Euler keeps it for h <= 1.
inline Problem sinode() {
    Problem p;
    p.name = "sinode";
    p.dimension = 1;
    p.h_fe = 1.0;
    p.rhs = [](double t, std::span<const double> u, std::span<double> du) {
        du[0] = std::sin(10.0 * t) * u[0] * (1.0 - u[0]);
    };
    p.exact = [](double t, std::span<const double> u0) {
        const double a = u0[0];
        return State{a / (a + (1.0 - a) * std::exp((std::cos(10.0 * t) - 1.0) / 10.0))};
    };
    return p;
}

/// u' = λ u.
inline Problem linear(double lambda = -1.0) {
    Problem p;
    p.name = "linear";
    p.dimension = 1;
    p.h_fe = lambda < 0.0 ? -1.0 / lambda : 0.0;
    p.rhs = [lambda](double, std::span<const double> u, std::span<double> du) { du[0] = lambda * u[0]; };
    p.exact = [lambda](double t, std::span<const double> u0) { return State{u0[0] * std::exp(lambda * t)}; };
    return p;
}

/// u' = cos t, a pure quadrature.
inline Problem quadrature() {
    Problem p;
    p.name = "quadrature";
    p.dimension = 1;
    p.rhs = [](double t, std::span<const double>, std::span<double> du) { du[0] = std::cos(t); };
    p.exact = [](double t, std::span<const double> u0) { return State{u0[0] + std::sin(t)}; };
    return p;
}

inline std::optional<Problem> by_name(std::string_view name) {
    if (name == "sinode") return sinode();
    if (name == "linear") return linear();
    if (name == "quadrature") return quadrature();
    return std::nullopt;
}

}  // namespace sspdo::problems
