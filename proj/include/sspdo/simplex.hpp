#pragma once

// Feasibility of  A_eq x = b_eq,  A_le x <= b_le,  x free
// by a dense-tableau phase-1 simplex with Bland's anti-cycling rule.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sspdo/error.hpp"
#include "sspdo/linalg.hpp"

namespace sspdo {

struct LinearConstraints {
    std::size_t variables = 0;
    std::vector<Vector> eq_rows;
    Vector eq_rhs;
    std::vector<Vector> le_rows;
    Vector le_rhs;

    void add_equality(Vector row, double rhs) {
        check(row);
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
    }
    void add_less_equal(Vector row, double rhs) {
        check(row);
        le_rows.push_back(std::move(row));
        le_rhs.push_back(rhs);
    }

private:
    void check(const Vector& row) const {
        if (row.size() != variables)
            throw Error(ErrorCode::DimensionMismatch, "constraint row has " + std::to_string(row.size()) +
                                                          " entries, expected " + std::to_string(variables));
    }
};

struct SimplexOptions {
    double pivot_tol = 1e-11;
    double feasibility_tol = 1e-9;  // phase-1 optimum at or below this counts as feasible
    std::size_t max_iterations = 200000;
};

struct FeasibilityResult {
    bool feasible = false;
    Vector x;                   // a feasible point when feasible
    double infeasibility = 0.0; // phase-1 optimum (sum of artificials)
    std::size_t iterations = 0;
};

/// Max violation of the constraints at x (0 when satisfied exactly).
inline double constraint_violation(const LinearConstraints& lp, const Vector& x) {
    double worst = 0.0;
    auto dot = [&](const Vector& row) {
        double acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
        return acc;
    };
    for (std::size_t i = 0; i < lp.eq_rows.size(); ++i)
        worst = std::max(worst, std::abs(dot(lp.eq_rows[i]) - lp.eq_rhs[i]));
    for (std::size_t i = 0; i < lp.le_rows.size(); ++i)
        worst = std::max(worst, dot(lp.le_rows[i]) - lp.le_rhs[i]);
    return worst;
}

namespace detail {

/// Row-echelon reduction of [rows | rhs] with partial pivoting. Drops rows that
/// reduce to zero; returns false when a zero row keeps a nonzero right-hand side.
inline bool reduce_equalities(std::vector<Vector>& rows, Vector& rhs, double tol) {
    if (rows.empty()) return true;
    const std::size_t n = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank + 1; i < rows.size(); ++i)
            if (std::abs(rows[i][col]) > std::abs(rows[best][col])) best = i;
        if (std::abs(rows[best][col]) <= tol) continue;
        std::swap(rows[best], rows[rank]);
        std::swap(rhs[best], rhs[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const double f = rows[i][col] / rows[rank][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
            rows[i][col] = 0.0;
            rhs[i] -= f * rhs[rank];
        }
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (std::abs(rhs[i]) > tol) return false;
    rows.resize(rank);
    rhs.resize(rank);
    return true;
}

/// Scales a row and its right-hand side so the largest coefficient is 1.
inline void normalize_row(Vector& row, double& rhs) {
    double big = 0.0;
    for (double v : row) big = std::max(big, std::abs(v));
    if (big == 0.0) return;
    for (double& v : row) v /= big;
    rhs /= big;
}

}  // namespace detail

/// Phase-1 simplex. Free variables are split as x = x⁺ − x⁻. Inequality rows with
/// a nonnegative right-hand side start from their slack; every other row gets an
/// artificial variable, and the sum of artificials is minimized.
inline FeasibilityResult find_feasible_point(const LinearConstraints& lp, const SimplexOptions& opts = {}) {
    const std::size_t n = lp.variables;
    FeasibilityResult result;

    std::vector<Vector> eq_rows = lp.eq_rows;
    Vector eq_rhs = lp.eq_rhs;
    for (std::size_t i = 0; i < eq_rows.size(); ++i) detail::normalize_row(eq_rows[i], eq_rhs[i]);
    if (!detail::reduce_equalities(eq_rows, eq_rhs, 1e-10)) {
        result.infeasibility = std::numeric_limits<double>::infinity();
        return result;
    }
    std::vector<Vector> le_rows = lp.le_rows;
    Vector le_rhs = lp.le_rhs;
    for (std::size_t i = 0; i < le_rows.size(); ++i) {
        const bool zero = std::all_of(le_rows[i].begin(), le_rows[i].end(), [](double v) { return v == 0.0; });
        if (zero && le_rhs[i] < 0.0) {
            result.infeasibility = -le_rhs[i];
            return result;
        }
        detail::normalize_row(le_rows[i], le_rhs[i]);
    }

    const std::size_t m_eq = eq_rows.size();
    const std::size_t m_le = le_rows.size();
    const std::size_t m = m_eq + m_le;
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m; ++i)
        if (i < m_eq || le_rhs[i - m_eq] < 0.0) needs_artificial.push_back(i);

    // Columns: [x⁺ (n) | x⁻ (n) | slack (m_le) | artificial | rhs]
    const std::size_t n_struct = 2 * n + m_le;
    const std::size_t n_cols = n_struct + needs_artificial.size();
    const std::size_t rhs_col = n_cols;
    // Extended precision keeps degenerate pivot sequences from drifting.
    const std::size_t width = n_cols + 1;
    std::vector<long double> cells((m + 1) * width, 0.0L);
    auto tab = [&](std::size_t i, std::size_t j) -> long double& { return cells[i * width + j]; };
    std::vector<std::size_t> basis(m);

    std::size_t next_art = n_struct;
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_eq = i < m_eq;
        const Vector& row = is_eq ? eq_rows[i] : le_rows[i - m_eq];
        const double rhs = is_eq ? eq_rhs[i] : le_rhs[i - m_eq];
        const double sign = rhs < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            tab(i, j) = sign * row[j];
            tab(i, n + j) = -sign * row[j];
        }
        if (!is_eq) tab(i, 2 * n + (i - m_eq)) = sign;
        tab(i, rhs_col) = sign * rhs;
        if (is_eq || rhs < 0.0) {
            tab(i, next_art) = 1.0;
            basis[i] = next_art++;
        } else {
            basis[i] = 2 * n + (i - m_eq);
        }
    }
    // Objective row holds reduced costs of  min Σ artificials, priced out.
    for (std::size_t i : needs_artificial)
        for (std::size_t j = 0; j <= n_cols; ++j)
            if (j < n_struct || j == rhs_col) tab(m, j) -= tab(i, j);

    auto pivot = [&](std::size_t r, std::size_t c) {
        const long double inv = 1.0L / tab(r, c);
        for (std::size_t j = 0; j <= n_cols; ++j) tab(r, j) *= inv;
        tab(r, c) = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r) continue;
            const long double f = tab(i, c);
            if (f == 0.0L) continue;
            for (std::size_t j = 0; j <= n_cols; ++j) tab(i, j) -= f * tab(r, j);
            tab(i, c) = 0.0;
        }
        basis[r] = c;
    };

    while (true) {
        if (result.iterations >= opts.max_iterations)
            throw Error(ErrorCode::NumericalCycle,
                        "phase-1 simplex exceeded " + std::to_string(opts.max_iterations) + " pivots");
        // Bland: lowest-index column with negative reduced cost.
        std::size_t enter = n_cols;
        for (std::size_t j = 0; j < n_cols; ++j)
            if (tab(m, j) < -opts.pivot_tol) {
                enter = j;
                break;
            }
        if (enter == n_cols) break;

        long double col_max = 0.0L;
        for (std::size_t i = 0; i < m; ++i) col_max = std::max(col_max, std::abs(tab(i, enter)));
        const long double pivot_floor = opts.pivot_tol * std::max(1.0L, col_max);

        std::size_t leave = m;
        long double best = std::numeric_limits<long double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const long double a = tab(i, enter);
            if (a <= pivot_floor) continue;
            const long double ratio = std::max(0.0L, tab(i, rhs_col)) / a;
            // Bland tie-break: smallest basic variable index.
            if (leave == m || ratio < best - 1e-14 || (ratio <= best + 1e-14 && basis[i] < basis[leave])) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        // Phase 1 is bounded below by zero, so no admissible pivot row means the
        // column's reduced cost is rounding noise.
        if (leave == m) {
            tab(m, enter) = 0.0;
            continue;
        }
        pivot(leave, enter);
        ++result.iterations;
    }

    result.infeasibility = static_cast<double>(-tab(m, rhs_col));
    Vector x(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = basis[i];
        if (j < n) x[j] += static_cast<double>(tab(i, rhs_col));
        else if (j < 2 * n) x[j - n] -= static_cast<double>(tab(i, rhs_col));
    }
    result.feasible = result.infeasibility <= opts.feasibility_tol &&
                      constraint_violation(lp, x) <= opts.feasibility_tol;
    if (result.feasible) result.x = std::move(x);
    return result;
}

}  // namespace sspdo
