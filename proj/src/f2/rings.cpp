#include "qdskit/f2/rings.hpp"

namespace qdskit::f2 {

namespace {

QPoly qvar(int v, int e = 1) { return QPoly(Monomial::var(v, e), Rational(1)); }

}  // namespace

const VarNames& q_names() {
    static const VarNames names{"q1", "q2", "tau"};
    return names;
}

const VarNames& r_names() {
    static const VarNames names{"r1", "r2", "tau"};
    return names;
}

const QFrac::Ctx& q_context() {
    static const QFrac::Ctx ctx = std::make_shared<const LocalContext<Rational>>(
        LocalContext<Rational>{{QPoly(Rational(4)) * qvar(kQ1) - QPoly(Rational(1))}, q_names()});
    return ctx;
}

const SRing::Ctx& s_context() {
    static const SRing::Ctx ctx = std::make_shared<const SqrtContext<QFrac>>(
        SqrtContext<QFrac>{QFrac(q_context(), QPoly(Rational(1)) - QPoly(Rational(4)) * qvar(kQ1)), "s"});
    return ctx;
}

const RFrac::Ctx& r_context() {
    static const RFrac::Ctx ctx = std::make_shared<const LocalContext<Rational>>(LocalContext<Rational>{
        {qvar(kR1) + QPoly(Rational(1)), qvar(kR1) - QPoly(Rational(1))}, r_names()});
    return ctx;
}

SRing s_const(const Rational& c) { return SRing(s_context(), QFrac(q_context(), QPoly(c)), QFrac(q_context(), QPoly())); }

SRing s_var(int v, int power) {
    return SRing(s_context(), QFrac(q_context(), qvar(v, power)), QFrac(q_context(), QPoly()));
}

SRing s_root() { return SRing::generator(s_context()); }

SRing s_inv_disc() {
    return SRing(s_context(), QFrac::atom_inverse(q_context(), 0), QFrac(q_context(), QPoly()));
}

RFrac r_const(const Rational& c) { return RFrac(r_context(), QPoly(c)); }
RFrac r_var(int v, int power) { return RFrac(r_context(), qvar(v, power)); }
RFrac r_lift(const QPoly& p) { return RFrac(r_context(), p); }

RFrac chart_root() {
    return (r_var(kR1) - r_const(1)) * RFrac::atom_inverse(r_context(), 0);
}

RFrac to_flat_chart(const SRing& x) {
    const RFrac one_plus = r_var(kR1) + r_const(1);
    const std::vector<RFrac> values{r_var(kR1) * RFrac::atom_inverse(r_context(), 0, 2), r_var(kR2) * one_plus, r_var(kTau)};
    const std::function<RFrac(const Rational&)> lift = [](const Rational& c) { return r_const(c); };
    return substitute<RFrac>(x.even(), values, lift) + substitute<RFrac>(x.odd(), values, lift) * chart_root();
}

Matrix<RFrac> to_flat_chart(const Matrix<SRing>& m) {
    return map_matrix<RFrac>(m, [](const SRing& x) { return to_flat_chart(x); });
}

QFrac at_zero(const QFrac& x, int v) {
    std::vector<QFrac> values;
    for (int i = 0; i < 3; ++i) values.push_back(i == v ? QFrac(q_context(), QPoly()) : QFrac(q_context(), qvar(i)));
    const std::function<QFrac(const Rational&)> lift = [](const Rational& c) { return QFrac(q_context(), QPoly(c)); };
    return substitute<QFrac>(x, values, lift);
}

Matrix<Rational> constant_at_origin(const Matrix<SRing>& m) {
    return map_matrix<Rational>(m, [](const SRing& x) {
        if (!is_zero(x.odd())) throw Error(ErrorCode::UnknownVariable, "odd part has no value at the origin");
        QFrac y = at_zero(at_zero(x.even(), kQ1), kQ2);
        if (!y.is_polynomial() || !y.num().is_constant())
            throw Error(ErrorCode::UnknownVariable, "entry is not constant at the origin");
        return y.num().constant_term();
    });
}

}  // namespace qdskit::f2
