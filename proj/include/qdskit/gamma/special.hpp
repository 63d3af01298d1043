#pragma once

#include "qdskit/core/rational.hpp"

#include <vector>

namespace qdskit::gamma {

/// Truncated Laurent series Σ_{k ≥ lead} coeffs[k − lead]·tᵏ, exact through
/// t^{lead + coeffs.size() − 1}.
struct LaurentSeries {
    int lead = 0;
    std::vector<double> coeffs;

    int top() const { return lead + static_cast<int>(coeffs.size()) - 1; }
    /// Coefficient of tᵏ; zero below the leading order, throws past the top.
    double at(int k) const;
    /// Multiplies, keeping exponents up to max_exponent.
    LaurentSeries times(const LaurentSeries& o, int max_exponent) const;
    LaurentSeries scaled(double c) const;
};

double euler_gamma_constant();

/// Γ(x) for x > 0.
double gamma_fn(double x);
/// ψ(x) = Γ'(x)/Γ(x) for x > 0, by upward recurrence and the asymptotic series.
double digamma(double x);
/// ζ(s, b) = Σ_{j ≥ 0} (b + j)^{−s} for integer s ≥ 2 and b > 0: fifty direct
/// terms plus an Euler–Maclaurin tail.
double hurwitz_zeta(int s, double b);

/// Taylor coefficients of Γ(b + x) through xᵒʳᵈᵉʳ, from
/// log Γ(b + x) = log Γ(b) + ψ(b)x + Σ_{k ≥ 2} (−1)ᵏ ζ(k, b) xᵏ / k.
LaurentSeries gamma_series(const Rational& b, int order);

/// Expansion of Γ(w·t + e) at t = 0 through t^{max_exponent}; e = 0 gives a
/// simple pole handled by Γ(wt) = Γ(1 + wt)/(wt).
LaurentSeries gamma_factor(const Rational& w, const Rational& e, int max_exponent);

}  // namespace qdskit::gamma
