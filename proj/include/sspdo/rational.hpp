#pragma once

// Coefficient text <-> double. "p/q" strings are reduced exactly and then
// rounded once, so "1/3" always yields the same binary value.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "sspdo/error.hpp"

namespace sspdo {

namespace detail {

inline constexpr std::int64_t kExactIntegerLimit = std::int64_t{1} << 53;

inline std::optional<std::int64_t> parse_integer(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

}  // namespace detail

/// Parses "p/q", "p", or a decimal literal.
inline double parse_coefficient(std::string_view text) {
    const std::string original(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = detail::parse_integer(text.substr(0, slash));
        const auto den = detail::parse_integer(text.substr(slash + 1));
        if (!num || !den) throw Error(ErrorCode::ParseError, "malformed rational \"" + original + "\"");
        if (*den == 0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + original + "\"");
        std::int64_t p = *num, q = *den;
        const std::int64_t g = std::gcd(p, q);
        p /= g;
        q /= g;
        if (q < 0) {
            p = -p;
            q = -q;
        }
        if (std::llabs(p) > detail::kExactIntegerLimit || q > detail::kExactIntegerLimit)
            throw Error(ErrorCode::ParseError, "rational \"" + original + "\" exceeds 2^53 after reduction");
        // Both operands exact, so IEEE division rounds once.
        return static_cast<double>(p) / static_cast<double>(q);
    }
    if (const auto integer = detail::parse_integer(text)) {
        if (std::llabs(*integer) > detail::kExactIntegerLimit)
            throw Error(ErrorCode::ParseError, "integer \"" + original + "\" exceeds 2^53");
        return static_cast<double>(*integer);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw Error(ErrorCode::ParseError, "cannot parse coefficient \"" + original + "\"");
    return value;
}

/// Smallest-denominator "p/q" (q <= max_den) whose rounding is exactly x.
inline std::optional<std::string> to_rational_string(double x, std::int64_t max_den = 1'000'000) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == std::trunc(x) && std::abs(x) <= static_cast<double>(detail::kExactIntegerLimit))
        return std::to_string(static_cast<std::int64_t>(x));
    // Continued-fraction convergents.
    double rest = std::abs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(rest);
        if (a_real > static_cast<double>(detail::kExactIntegerLimit)) break;
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        const double candidate = static_cast<double>(p2) / static_cast<double>(q2);
        if (candidate == std::abs(x)) {
            const std::int64_t num = x < 0 ? -p2 : p2;
            if (q2 == 1) return std::to_string(num);
            return std::to_string(num) + "/" + std::to_string(q2);
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = rest - a_real;
        if (frac == 0.0) break;
        rest = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace sspdo
