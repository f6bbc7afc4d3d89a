#pragma once

// Built-in methods, each with a dense output and its documented SSP coefficients.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sspdo/dense_construct.hpp"
#include "sspdo/linalg.hpp"
#include "sspdo/shu_osher.hpp"
#include "sspdo/tableau.hpp"

namespace sspdo {

struct MethodRegistryEntry {
    std::string key;
    ButcherTableau tableau;
    std::optional<DenseWeights> weights;
    int order = 0;
    int dense_order = 0;
    double ssp_coefficient = 0.0;                 // 𝒞(A,b)
    std::optional<double> dense_ssp_coefficient;  // 𝒞(A,b̄) of the built-in weights
};

namespace registry {

/// The step recursion y_2 = y_1 + h/2 f(y_1), y_3 = y_2 + h/2 f(y_2),
/// u_{n+1} = u_n/3 + 2/3 (y_3 + h/2 f(y_3)), built from its convex-combination form.
inline ButcherTableau numexample_tableau() {
    const Matrix alpha = Matrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 2.0 / 3.0}});
    const Matrix beta = Matrix::from_rows({{0, 0, 0}, {0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 1.0 / 3.0}});
    return butcher_from_shu_osher(alpha, beta, "numexample-322");
}

/// The SSP dense output of the 3-stage example, read from its convex-combination
/// coefficients (β̄ = (2θ − 2θ², 0, 2θ²/3) at C = 2).
inline DenseWeights numexample_ssp_weights() {
    const ButcherTableau t = numexample_tableau();
    ShuOsherDense so;
    so.C = 2.0;
    so.beta_bar = DenseWeights(Matrix::from_rows({{0, 2, -2}, {0, 0, 0}, {0, 0, 2.0 / 3.0}}));
    return dense_weights_from_shu_osher(t, so);
}

/// Second-order dense output of the 3-stage example that is not SSP:
/// b̄ = (2θ − θ², −2θ + θ², θ).
inline DenseWeights numexample_nonssp_weights() {
    return DenseWeights(Matrix::from_rows({{0, 2, -1}, {0, -2, 1}, {0, 1, 0}}));
}

inline ButcherTableau ssp222() {
    return validate_tableau(Matrix::from_rows({{0, 0}, {1, 0}}), {0.5, 0.5}, "ssp222");
}

inline ButcherTableau ssp322() {
    return validate_tableau(Matrix::from_rows({{0, 0, 0}, {0.5, 0, 0}, {0.5, 0.5, 0}}),
                            {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, "ssp322");
}

inline ButcherTableau ssp332() {
    return validate_tableau(Matrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0.25, 0.25, 0}}),
                            {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}, "ssp332");
}

inline constexpr int kFamilyMax = 10;

inline std::vector<MethodRegistryEntry> all() {
    std::vector<MethodRegistryEntry> out;
    auto add = [&](std::string key, ButcherTableau t, DenseWeights w, int p, int pbar, double c,
                   double c_dense) {
        t = validate_tableau(t.A(), t.b(), key);
        out.push_back({std::move(key), std::move(t), std::move(w), p, pbar, c, c_dense});
    };
    add("ssp222", ssp222(), second_order_weights(ssp222()), 2, 2, 1.0, 1.0);
    add("ssp322", ssp322(), second_order_weights(ssp322()), 2, 2, 2.0, 2.0);
    add("ssp332", ssp332(), second_order_weights(ssp332()), 3, 2, 1.0, 1.0);
    add("numexample-322", numexample_tableau(), numexample_ssp_weights(), 2, 2, 2.0, 2.0);
    for (int s = 2; s <= kFamilyMax; ++s) {
        const ButcherTableau t = family_tableau(s);
        // Quadratic weights keep the full coefficient only up to four stages;
        // beyond that the dense coefficient is computed, not documented.
        MethodRegistryEntry e{t.name(), t, second_order_weights(t), 2, 2, static_cast<double>(s - 1),
                              std::nullopt};
        if (s <= 4) e.dense_ssp_coefficient = static_cast<double>(s - 1);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::optional<MethodRegistryEntry> find(std::string_view key) {
    for (auto& e : all())
        if (e.key == key) return e;
    return std::nullopt;
}

inline std::vector<std::string> keys() {
    std::vector<std::string> k;
    for (const auto& e : all()) k.push_back(e.key);
    return k;
}

}  // namespace registry
}  // namespace sspdo
