#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sspdo {

/// Real polynomial in the monomial basis, constant term first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
    Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}

    static Polynomial monomial(std::size_t power, double scale = 1.0) {
        std::vector<double> c(power + 1, 0.0);
        c[power] = scale;
        return Polynomial(std::move(c));
    }

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    /// Degree of the stored representation (trailing zeros included).
    [[nodiscard]] std::size_t degree() const noexcept {
        return coeffs_.empty() ? 0 : coeffs_.size() - 1;
    }

    [[nodiscard]] double coeff(std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }

    [[nodiscard]] double operator()(double x) const noexcept {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

    [[nodiscard]] Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial{0.0};
        std::vector<double> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
        return Polynomial(std::move(d));
    }

    /// k-th right derivative at zero: k! * c_k.
    [[nodiscard]] double derivative_at_zero(std::size_t k) const noexcept {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return f * coeff(k);
    }

    /// q(x) = p(lo + (hi - lo) x).
    [[nodiscard]] Polynomial compose_affine(double lo, double hi) const {
        const double w = hi - lo;
        std::vector<double> out(coeffs_.size(), 0.0);
        // Horner in polynomial arithmetic: acc = acc * (lo + w x) + c_k.
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            std::vector<double> next(out.size(), 0.0);
            for (std::size_t i = 0; i < out.size(); ++i) {
                next[i] += lo * out[i];
                if (i + 1 < out.size()) next[i + 1] += w * out[i];
            }
            next[0] += coeffs_[k];
            out = std::move(next);
        }
        return Polynomial(std::move(out));
    }

    [[nodiscard]] double max_abs_coeff() const noexcept {
        double m = 0.0;
        for (double c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    [[nodiscard]] bool is_zero(double tol = 0.0) const noexcept { return max_abs_coeff() <= tol; }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    Polynomial& operator*=(double s) {
        for (double& c : coeffs_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{};
        std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(out));
    }

private:
    std::vector<double> coeffs_;
};

}  // namespace sspdo
