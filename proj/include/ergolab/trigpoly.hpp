#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "angle.hpp"

namespace ergolab {

using Complex = std::complex<double>;

/// e(t) = exp(2*pi*i*t), the standard character of the circle.
inline Complex unit_phase(double t) {
    const double arg = 2.0 * std::numbers::pi * t;
    return {std::cos(arg), std::sin(arg)};
}

/// Finite trigonometric polynomial sum_k c_k e(k x), stored as a sorted
/// coefficient list. Observables on the torus are always of this form here,
/// which keeps conditional expectations and L2 norms exactly computable.
class TrigPolynomial {
  public:
    TrigPolynomial() = default;

    /// Build from (frequency, coefficient) pairs; repeated frequencies are
    /// summed, zero coefficients dropped.
    static TrigPolynomial from_terms(std::vector<std::pair<std::int64_t, Complex>> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        TrigPolynomial f;
        for (const auto& [k, c] : terms) {
            if (!f.coeffs_.empty() && f.coeffs_.back().first == k)
                f.coeffs_.back().second += c;
            else
                f.coeffs_.emplace_back(k, c);
        }
        std::erase_if(f.coeffs_, [](const auto& t) { return t.second == Complex{}; });
        return f;
    }

    static TrigPolynomial constant(Complex c) { return from_terms({{0, c}}); }
    static TrigPolynomial harmonic(std::int64_t k, Complex c) { return from_terms({{k, c}}); }

    Complex eval(double x) const {
        Complex s{};
        for (const auto& [k, c] : coeffs_) s += c * unit_phase(static_cast<double>(k) * x);
        return s;
    }

    Complex coeff(std::int64_t k) const {
        for (const auto& [kk, c] : coeffs_)
            if (kk == k) return c;
        return {};
    }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (const auto& [k, c] : coeffs_) d = std::max(d, std::abs(k));
        return d;
    }

    /// Coefficient l1 norm, an upper bound for the sup norm.
    double sup_bound() const {
        double s = 0.0;
        for (const auto& [k, c] : coeffs_) s += std::abs(c);
        return s;
    }

    /// True when the coefficients satisfy c_{-k} = conj(c_k) exactly, i.e.
    /// the polynomial is real-valued on the circle.
    bool is_real() const {
        for (const auto& [k, c] : coeffs_)
            if (coeff(-k) != std::conj(c)) return false;
        return true;
    }

    bool empty() const { return coeffs_.empty(); }
    const std::vector<std::pair<std::int64_t, Complex>>& terms() const { return coeffs_; }

  private:
    std::vector<std::pair<std::int64_t, Complex>> coeffs_;
};

/// Conditional expectation onto the sigma-algebra of rotation-invariant sets:
/// the projection keeping exactly the frequencies with k*angle an integer.
/// For an irrational angle only the mean survives; for p/q the multiples of q
/// survive. The decision is structural (see Angle::resonant), never numeric.
inline TrigPolynomial cond_exp_invariant(const TrigPolynomial& f, const Angle& angle) {
    std::vector<std::pair<std::int64_t, Complex>> kept;
    for (const auto& [k, c] : f.terms())
        if (angle.resonant(k)) kept.emplace_back(k, c);
    return TrigPolynomial::from_terms(std::move(kept));
}

}  // namespace ergolab
