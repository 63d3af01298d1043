#pragma once

#include "qdskit/core/error.hpp"
#include "qdskit/core/poly.hpp"

#include <memory>
#include <optional>
#include <string>

namespace qdskit {

/// Holds the radicand d of the extension F[s] / (s² − d).
template <class F>
struct SqrtContext {
    F radicand;
    std::string symbol = "s";
};

/// Element a + b·s with s² = d.  The relation is applied on every product so
/// the odd part never carries higher powers of s.
template <class F>
class SqrtExt {
public:
    using Ctx = std::shared_ptr<const SqrtContext<F>>;

    SqrtExt() = default;
    template <std::integral I>
    SqrtExt(I c) : a_(c) {}
    SqrtExt(F a) : a_(std::move(a)) {}
    SqrtExt(Ctx ctx, F a, F b) : ctx_(std::move(ctx)), a_(std::move(a)), b_(std::move(b)) {}

    static SqrtExt generator(const Ctx& ctx) { return SqrtExt(ctx, F(0), F(1)); }

    const Ctx& context() const { return ctx_; }
    const F& even() const { return a_; }
    const F& odd() const { return b_; }
    bool is_zero() const { return qdskit::is_zero(a_) && qdskit::is_zero(b_); }

    SqrtExt& operator+=(const SqrtExt& o) { ctx_ = merge(ctx_, o.ctx_); a_ += o.a_; b_ += o.b_; return *this; }
    SqrtExt& operator-=(const SqrtExt& o) { ctx_ = merge(ctx_, o.ctx_); a_ -= o.a_; b_ -= o.b_; return *this; }
    SqrtExt& operator*=(const SqrtExt& o) { return *this = *this * o; }

    friend SqrtExt operator+(SqrtExt a, const SqrtExt& b) { return a += b; }
    friend SqrtExt operator-(SqrtExt a, const SqrtExt& b) { return a -= b; }
    friend SqrtExt operator*(const SqrtExt& x, const SqrtExt& y) {
        Ctx ctx = merge(x.ctx_, y.ctx_);
        F bb = x.b_ * y.b_;
        F even = x.a_ * y.a_;
        if (!qdskit::is_zero(bb)) even += bb * ctx->radicand;
        return SqrtExt(ctx, even, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend SqrtExt operator/(const SqrtExt& x, const SqrtExt& y) {
        auto inv = y.inverse();
        if (!inv) throw Error(ErrorCode::DivisionByNonUnit, "norm of the divisor is not a unit");
        return x * *inv;
    }
    SqrtExt operator-() const { return SqrtExt(ctx_, -a_, -b_); }

    friend bool operator==(const SqrtExt& x, const SqrtExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    /// a² − d·b².
    F norm() const {
        if (qdskit::is_zero(b_)) return a_ * a_;
        return a_ * a_ - ctx_->radicand * b_ * b_;
    }
    SqrtExt conjugate() const { return SqrtExt(ctx_, a_, -b_); }

    std::optional<SqrtExt> inverse() const {
        auto ninv = qdskit::try_inverse(norm());
        if (!ninv) return std::nullopt;
        SqrtExt c = conjugate();
        return SqrtExt(ctx_, c.a_ * *ninv, c.b_ * *ninv);
    }

    /// Uses s' = d' / (2s) = d'·s / (2d).
    SqrtExt diff(int v) const {
        F da = qdskit::diff(a_, v);
        F db = qdskit::diff(b_, v);
        if (!qdskit::is_zero(b_)) {
            F dd = qdskit::diff(ctx_->radicand, v);
            if (!qdskit::is_zero(dd)) {
                auto dinv = qdskit::try_inverse(ctx_->radicand);
                if (!dinv) throw Error(ErrorCode::DivisionByNonUnit, "radicand is not a unit");
                db += b_ * dd * *dinv * F(Rational(1, 2));
            }
        }
        return SqrtExt(ctx_, da, db);
    }
    SqrtExt log_diff(int v) const { return diff(v) * SqrtExt(F(Poly<typename F::Base::Coeff>::var(v))); }

    SqrtExt coeff(int v, int k) const { return SqrtExt(ctx_, qdskit::coeff(a_, v, k), qdskit::coeff(b_, v, k)); }
    std::pair<int, int> degree_range(int v) const {
        auto ra = qdskit::degree_range(a_, v), rb = qdskit::degree_range(b_, v);
        if (ra.second < ra.first) return rb;
        if (rb.second < rb.first) return ra;
        return {std::min(ra.first, rb.first), std::max(ra.second, rb.second)};
    }

    std::string str(const VarNames& names) const {
        bool za = qdskit::is_zero(a_), zb = qdskit::is_zero(b_);
        std::string sym = ctx_ ? ctx_->symbol : "s";
        if (za && zb) return "0";
        if (zb) return a_.str(names);
        std::string odd = "(" + b_.str(names) + ")*" + sym;
        if (za) return odd;
        return a_.str(names) + " + " + odd;
    }

private:
    static Ctx merge(const Ctx& a, const Ctx& b) {
        if (!a) return b;
        if (!b) return a;
        if (a != b) throw Error(ErrorCode::RingMismatch, "operands belong to different extensions");
        return a;
    }

    Ctx ctx_;
    F a_;
    F b_;
};

template <class F>
bool is_zero(const SqrtExt<F>& x) {
    return x.is_zero();
}
template <class F>
std::optional<SqrtExt<F>> try_inverse(const SqrtExt<F>& x) {
    return x.inverse();
}
template <class F>
SqrtExt<F> diff(const SqrtExt<F>& x, int v) {
    return x.diff(v);
}
template <class F>
SqrtExt<F> log_diff(const SqrtExt<F>& x, int v) {
    return x.log_diff(v);
}
template <class F>
SqrtExt<F> coeff(const SqrtExt<F>& x, int v, int k) {
    return x.coeff(v, k);
}
template <class F>
std::pair<int, int> degree_range(const SqrtExt<F>& x, int v) {
    return x.degree_range(v);
}

}  // namespace qdskit
