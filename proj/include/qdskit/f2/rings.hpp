#pragma once

#include "qdskit/core/gaussian.hpp"
#include "qdskit/core/local_frac.hpp"
#include "qdskit/core/matrix.hpp"
#include "qdskit/core/poly.hpp"
#include "qdskit/core/ring.hpp"
#include "qdskit/core/sqrt_ext.hpp"

namespace qdskit::f2 {

// Variables of the q-chart (q₁, q₂, τ) and of the flat r-chart (r₁, r₂, τ).
inline constexpr int kQ1 = 0;
inline constexpr int kQ2 = 1;
inline constexpr int kR1 = 0;
inline constexpr int kR2 = 1;
inline constexpr int kTau = 2;

/// Q[q₁^{±1}, q₂^{±1}, τ^{±1}] localized at 4q₁ − 1.
using QFrac = LocalFrac<Rational>;
/// QFrac[s] / (s² − (1 − 4q₁)).
using SRing = SqrtExt<QFrac>;
/// Q[r₁^{±1}, r₂^{±1}, τ^{±1}] localized at r₁ + 1 and r₁ − 1.
using RFrac = LocalFrac<Rational>;

const VarNames& q_names();
const VarNames& r_names();

const QFrac::Ctx& q_context();
const SRing::Ctx& s_context();
const RFrac::Ctx& r_context();

SRing s_const(const Rational& c);
SRing s_var(int v, int power = 1);
/// s = (1 − 4q₁)^{1/2}.
SRing s_root();
/// (4q₁ − 1)⁻¹.
SRing s_inv_disc();

RFrac r_const(const Rational& c);
RFrac r_var(int v, int power = 1);
RFrac r_lift(const QPoly& p);

/// q₁ = r₁/(1 + r₁)², q₂ = r₂(1 + r₁), τ = τ and s = (r₁ − 1)/(r₁ + 1).
RFrac to_flat_chart(const SRing& x);
Matrix<RFrac> to_flat_chart(const Matrix<SRing>& m);
/// The image of s under the chart change.
RFrac chart_root();

/// Sets q_v = 0 in an element with no odd part and no pole along q_v = 0.
QFrac at_zero(const QFrac& x, int v);
Matrix<Rational> constant_at_origin(const Matrix<SRing>& m);

}  // namespace qdskit::f2
