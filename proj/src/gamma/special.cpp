#include "qdskit/gamma/special.hpp"

#include "qdskit/core/error.hpp"

#include <cmath>

namespace qdskit::gamma {

double LaurentSeries::at(int k) const {
    if (k < lead) return 0.0;
    if (k > top()) throw Error(ErrorCode::DimensionMismatch, "series coefficient past its truncation order");
    return coeffs[static_cast<std::size_t>(k - lead)];
}

LaurentSeries LaurentSeries::times(const LaurentSeries& o, int max_exponent) const {
    LaurentSeries out;
    out.lead = lead + o.lead;
    const int top_exp = std::min({max_exponent, top() + o.lead, o.top() + lead});
    if (top_exp < out.lead) return out;
    out.coeffs.assign(static_cast<std::size_t>(top_exp - out.lead + 1), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs.size(); ++j) {
            const int e = lead + o.lead + static_cast<int>(i + j);
            if (e > top_exp) break;
            out.coeffs[static_cast<std::size_t>(e - out.lead)] += coeffs[i] * o.coeffs[j];
        }
    return out;
}

LaurentSeries LaurentSeries::scaled(double c) const {
    LaurentSeries out = *this;
    for (auto& x : out.coeffs) x *= c;
    return out;
}

double euler_gamma_constant() { return 0.57721566490153286060651209008240243; }

double gamma_fn(double x) {
    if (!(x > 0)) throw Error(ErrorCode::NonPositiveArgument, "gamma function at a non-positive argument");
    return std::tgamma(x);
}

double digamma(double x) {
    if (!(x > 0)) throw Error(ErrorCode::NonPositiveArgument, "digamma at a non-positive argument");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // Bernoulli numbers B₂ … B₁₄ over 2k.
    static const double kTail[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12};
    const double inv2 = 1.0 / (x * x);
    double pw = inv2, series = 0.0;
    for (double t : kTail) {
        series += t * pw;
        pw *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - series;
}

double hurwitz_zeta(int s, double b) {
    if (!(b > 0)) throw Error(ErrorCode::NonPositiveArgument, "Hurwitz zeta at a non-positive shift");
    if (s < 2) throw Error(ErrorCode::NonPositiveArgument, "Hurwitz zeta needs s >= 2");
    constexpr int kTerms = 50;
    double sum = 0.0;
    for (int j = 0; j < kTerms; ++j) sum += std::pow(b + j, -s);
    const double x = b + kTerms;
    sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
    // Σ B_{2i}/(2i)! · s(s+1)…(s+2i−2) · x^{−s−2i+1}, i = 1..3.
    static const double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42};
    double rising = s, fact = 2.0;
    for (int i = 1; i <= 3; ++i) {
        sum += kB[i - 1] / fact * rising * std::pow(x, -s - 2 * i + 1);
        rising *= (s + 2 * i - 1) * (s + 2 * i);
        fact *= (2 * i + 1) * (2 * i + 2);
    }
    return sum;
}

LaurentSeries gamma_series(const Rational& b, int order) {
    if (b.sign() <= 0) throw Error(ErrorCode::NonPositiveArgument, "gamma series at b = " + b.str());
    const double bd = b.to_double();
    std::vector<double> lg(static_cast<std::size_t>(order) + 1, 0.0);
    if (order >= 1) lg[1] = digamma(bd);
    for (int k = 2; k <= order; ++k) lg[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * hurwitz_zeta(k, bd) / k;
    // exp of a power series: k·e_k = Σ_{j=1}^{k} j·l_j·e_{k−j}.
    LaurentSeries out;
    out.coeffs.assign(static_cast<std::size_t>(order) + 1, 0.0);
    out.coeffs[0] = gamma_fn(bd);
    for (int k = 1; k <= order; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * lg[static_cast<std::size_t>(j)] * out.coeffs[static_cast<std::size_t>(k - j)];
        out.coeffs[static_cast<std::size_t>(k)] = acc / k;
    }
    return out;
}

LaurentSeries gamma_factor(const Rational& w, const Rational& e, int max_exponent) {
    if (e.sign() < 0) throw Error(ErrorCode::NonPositiveArgument, "gamma factor with negative shift " + e.str());
    const double wd = w.to_double();
    const bool pole = e.is_zero();
    const int lead = pole ? -1 : 0;
    if (max_exponent < lead) return LaurentSeries{lead, {}};
    const int order = std::max(0, max_exponent - lead);
    LaurentSeries base = gamma_series(pole ? Rational(1) : e, order);
    double pw = 1.0;
    for (auto& c : base.coeffs) {
        c *= pw;
        pw *= wd;
    }
    if (pole) {
        base.lead = -1;
        base = base.scaled(1.0 / wd);
    }
    if (base.top() > max_exponent) base.coeffs.resize(static_cast<std::size_t>(max_exponent - base.lead + 1));
    return base;
}

}  // namespace qdskit::gamma
