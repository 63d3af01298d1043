#pragma once

#include "qdskit/core/error.hpp"
#include "qdskit/core/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdskit {

/// The finite set of polynomials allowed in denominators (besides the
/// variables themselves, which are already units of the Laurent ring).
template <class K>
struct LocalContext {
    std::vector<Poly<K>> atoms;
    VarNames names;
};

/// Element num / Π atoms^den of a Laurent polynomial ring localized at the
/// atoms of its context.  Kept reduced: no atom with a positive exponent
/// divides the numerator, so equal elements have equal representations.
template <class K>
class LocalFrac {
public:
    using Ctx = std::shared_ptr<const LocalContext<K>>;
    using Base = Poly<K>;

    LocalFrac() = default;
    template <std::integral I>
    LocalFrac(I c) : num_(c) {}
    LocalFrac(const K& c) : num_(c) {}
    LocalFrac(Base num) : num_(std::move(num)) {}
    LocalFrac(Ctx ctx, Base num, std::vector<int> den = {})
        : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static LocalFrac atom_inverse(const Ctx& ctx, int atom, int power = 1) {
        std::vector<int> den(ctx->atoms.size(), 0);
        den[static_cast<std::size_t>(atom)] = power;
        return LocalFrac(ctx, Base(1), std::move(den));
    }

    const Ctx& context() const { return ctx_; }
    const Base& num() const { return num_; }
    int den_exponent(int atom) const {
        return atom < static_cast<int>(den_.size()) ? den_[static_cast<std::size_t>(atom)] : 0;
    }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const {
        for (int e : den_)
            if (e != 0) return false;
        return true;
    }

    LocalFrac& operator+=(const LocalFrac& o) { return *this = combine(*this, o, 1); }
    LocalFrac& operator-=(const LocalFrac& o) { return *this = combine(*this, o, -1); }
    LocalFrac& operator*=(const LocalFrac& o) { return *this = *this * o; }

    friend LocalFrac operator+(const LocalFrac& a, const LocalFrac& b) { return combine(a, b, 1); }
    friend LocalFrac operator-(const LocalFrac& a, const LocalFrac& b) { return combine(a, b, -1); }
    friend LocalFrac operator*(const LocalFrac& a, const LocalFrac& b) {
        Ctx ctx = merge(a.ctx_, b.ctx_);
        std::vector<int> den(ctx ? ctx->atoms.size() : 0, 0);
        for (std::size_t i = 0; i < den.size(); ++i)
            den[i] = a.den_exponent(static_cast<int>(i)) + b.den_exponent(static_cast<int>(i));
        return LocalFrac(ctx, a.num_ * b.num_, std::move(den));
    }
    friend LocalFrac operator/(const LocalFrac& a, const LocalFrac& b) {
        auto inv = b.inverse();
        if (!inv) throw Error(ErrorCode::DivisionByNonUnit, "denominator is not a unit of the localized ring");
        return a * *inv;
    }
    LocalFrac operator-() const {
        LocalFrac r = *this;
        r.num_ = -r.num_;
        return r;
    }
    LocalFrac scaled(const K& k) const {
        LocalFrac r = *this;
        r.num_ = r.num_.scaled(k);
        if (r.num_.is_zero()) r.den_.clear();
        return r;
    }

    // Reduced representations are unique, so structural comparison decides equality.
    friend bool operator==(const LocalFrac& a, const LocalFrac& b) {
        if (a.num_ != b.num_) return false;
        std::size_t n = std::max(a.den_.size(), b.den_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.den_exponent(static_cast<int>(i)) != b.den_exponent(static_cast<int>(i))) return false;
        return true;
    }

    /// Units: c · Laurent monomial · product of atom powers.
    std::optional<LocalFrac> inverse() const {
        if (num_.is_zero()) return std::nullopt;
        Base rest = num_;
        std::vector<int> up(ctx_ ? ctx_->atoms.size() : 0, 0);
        for (std::size_t i = 0; i < up.size(); ++i) {
            while (true) {
                auto q = Base::divide_exact(rest, ctx_->atoms[i]);
                if (!q) break;
                rest = std::move(*q);
                ++up[i];
            }
        }
        auto rinv = rest.inverse();
        if (!rinv) return std::nullopt;
        Base top = *rinv;
        for (std::size_t i = 0; i < up.size(); ++i)
            for (int k = 0; k < den_exponent(static_cast<int>(i)); ++k) top = top * ctx_->atoms[i];
        return LocalFrac(ctx_, top, up);
    }

    LocalFrac diff(int v) const {
        // (N / D)' with D = Π a_i^{e_i}: (N' Π a_i − N Σ e_i a_i' Π_{j≠i} a_j) / (D Π a_i).
        if (is_polynomial()) return LocalFrac(ctx_, num_.diff(v), den_);
        Base prod(1);
        std::vector<int> den = den_;
        for (std::size_t i = 0; i < den_.size(); ++i)
            if (den_[i] > 0) {
                prod = prod * ctx_->atoms[i];
                ++den[i];
            }
        Base top = num_.diff(v) * prod;
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (den_[i] <= 0) continue;
            Base others(1);
            for (std::size_t j = 0; j < den_.size(); ++j)
                if (j != i && den_[j] > 0) others = others * ctx_->atoms[j];
            top -= num_ * ctx_->atoms[i].diff(v) * others * Base(den_[i]);
        }
        return LocalFrac(ctx_, top, den);
    }
    LocalFrac log_diff(int v) const { return diff(v) * LocalFrac(Base::var(v)); }

    /// Coefficient of x_v^k; requires every active atom to be free of x_v.
    LocalFrac coeff(int v, int k) const {
        for (std::size_t i = 0; i < den_.size(); ++i)
            if (den_[i] > 0 && ctx_->atoms[i].involves(v))
                throw Error(ErrorCode::UnknownVariable, "coefficient extraction in a variable occurring in a denominator");
        return LocalFrac(ctx_, num_.coeff(v, k), den_);
    }
    std::pair<int, int> degree_range(int v) const { return num_.degree_range(v); }

    std::string str(const VarNames& names) const {
        std::string s = to_string(num_, names);
        if (is_polynomial()) return s;
        std::string d;
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (den_[i] == 0) continue;
            if (!d.empty()) d += "*";
            d += "(" + to_string(ctx_->atoms[i], names) + ")";
            if (den_[i] != 1) d += "^" + std::to_string(den_[i]);
        }
        return "(" + s + ")/" + d;
    }

private:
    static Ctx merge(const Ctx& a, const Ctx& b) {
        if (!a) return b;
        if (!b) return a;
        if (a != b) throw Error(ErrorCode::RingMismatch, "operands belong to different localized rings");
        return a;
    }

    static LocalFrac combine(const LocalFrac& a, const LocalFrac& b, int sign) {
        Ctx ctx = merge(a.ctx_, b.ctx_);
        std::size_t n = ctx ? ctx->atoms.size() : 0;
        std::vector<int> den(n, 0);
        Base fa = a.num_, fb = b.num_;
        for (std::size_t i = 0; i < n; ++i) {
            int ea = a.den_exponent(static_cast<int>(i)), eb = b.den_exponent(static_cast<int>(i));
            den[i] = std::max(ea, eb);
            for (int k = ea; k < den[i]; ++k) fa = fa * ctx->atoms[i];
            for (int k = eb; k < den[i]; ++k) fb = fb * ctx->atoms[i];
        }
        return LocalFrac(ctx, sign > 0 ? fa + fb : fa - fb, std::move(den));
    }

    void normalize() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (std::size_t i = 0; i < den_.size(); ++i) {
            while (den_[i] > 0) {
                auto q = Base::divide_exact(num_, ctx_->atoms[i]);
                if (!q) break;
                num_ = std::move(*q);
                --den_[i];
            }
            if (den_[i] < 0) {
                for (int k = den_[i]; k < 0; ++k) num_ = num_ * ctx_->atoms[i];
                den_[i] = 0;
            }
        }
        while (!den_.empty() && den_.back() == 0) den_.pop_back();
    }

    Ctx ctx_;
    Base num_;
    std::vector<int> den_;
};

template <class K>
bool is_zero(const LocalFrac<K>& a) {
    return a.is_zero();
}
template <class K>
std::optional<LocalFrac<K>> try_inverse(const LocalFrac<K>& a) {
    return a.inverse();
}
template <class K>
LocalFrac<K> diff(const LocalFrac<K>& a, int v) {
    return a.diff(v);
}
template <class K>
LocalFrac<K> log_diff(const LocalFrac<K>& a, int v) {
    return a.log_diff(v);
}
template <class K>
LocalFrac<K> coeff(const LocalFrac<K>& a, int v, int k) {
    return a.coeff(v, k);
}
template <class K>
std::pair<int, int> degree_range(const LocalFrac<K>& a, int v) {
    return a.degree_range(v);
}

using QFrac = LocalFrac<Rational>;

}  // namespace qdskit
