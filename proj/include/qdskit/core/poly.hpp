#pragma once

#include "qdskit/core/error.hpp"
#include "qdskit/core/gaussian.hpp"
#include "qdskit/core/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qdskit {

/// Exponent vector of a Laurent monomial. Trailing zeros are trimmed so that
/// equal monomials have equal representations regardless of variable count.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> e) : e_(std::move(e)) { trim(); }

    static Monomial var(int index, int power = 1) {
        std::vector<int> e(static_cast<std::size_t>(index) + 1, 0);
        e[static_cast<std::size_t>(index)] = power;
        return Monomial(std::move(e));
    }

    int operator[](int i) const {
        return i < static_cast<int>(e_.size()) ? e_[static_cast<std::size_t>(i)] : 0;
    }
    int size() const { return static_cast<int>(e_.size()); }
    bool is_one() const { return e_.empty(); }
    const std::vector<int>& exponents() const { return e_; }

    Monomial with(int i, int power) const {
        std::vector<int> e = e_;
        if (i >= static_cast<int>(e.size())) e.resize(static_cast<std::size_t>(i) + 1, 0);
        e[static_cast<std::size_t>(i)] = power;
        return Monomial(std::move(e));
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<int> e(std::max(a.e_.size(), b.e_.size()), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        return Monomial(std::move(e));
    }
    Monomial inverse() const {
        std::vector<int> e = e_;
        for (int& x : e) x = -x;
        return Monomial(std::move(e));
    }

    bool has_negative() const {
        return std::any_of(e_.begin(), e_.end(), [](int x) { return x < 0; });
    }
    bool divides(const Monomial& o) const {
        for (int i = 0; i < std::max(size(), o.size()); ++i)
            if ((*this)[i] > o[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    // Lexicographic order on the zero-padded vectors.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int n = std::max(a.size(), b.size());
        for (int i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }

private:
    void trim() {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }
    std::vector<int> e_;
};

/// Sparse Laurent polynomial with coefficients in a field K.  Variables are
/// identified by index; names live with the caller (see VarNames).
template <class K>
class Poly {
public:
    using Coeff = K;
    using Terms = std::map<Monomial, K>;

    Poly() = default;
    template <std::integral I>
    Poly(I c) { add_term(Monomial(), K(c)); }
    Poly(const K& c) { add_term(Monomial(), c); }
    Poly(const Monomial& m, const K& c) { add_term(m, c); }

    static Poly var(int index, int power = 1) { return Poly(Monomial::var(index, power), K(1)); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    K constant_term() const {
        auto it = t_.find(Monomial());
        return it == t_.end() ? K(0) : it->second;
    }
    std::size_t size() const { return t_.size(); }

    void add_term(const Monomial& m, const K& c) {
        if (qdskit::is_zero(c)) return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (qdskit::is_zero(it->second)) t_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    Poly scaled(const K& k) const {
        Poly r;
        if (qdskit::is_zero(k)) return r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, c * k);
        return r;
    }
    Poly shifted(const Monomial& s) const {
        Poly r;
        for (const auto& [m, c] : t_) r.t_.emplace(m * s, c);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

    /// Ordinary partial derivative in variable v.
    Poly diff(int v) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            int e = m[v];
            if (e != 0) r.add_term(m.with(v, e - 1), c * K(e));
        }
        return r;
    }
    /// Logarithmic derivative x_v ∂/∂x_v.
    Poly log_diff(int v) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            int e = m[v];
            if (e != 0) r.add_term(m, c * K(e));
        }
        return r;
    }
    /// Coefficient of x_v^k, as a polynomial free of x_v.
    Poly coeff(int v, int k) const {
        Poly r;
        for (const auto& [m, c] : t_)
            if (m[v] == k) r.add_term(m.with(v, 0), c);
        return r;
    }
    bool involves(int v) const {
        return std::any_of(t_.begin(), t_.end(), [v](const auto& p) { return p.first[v] != 0; });
    }
    std::pair<int, int> degree_range(int v) const {
        if (t_.empty()) return {0, -1};
        int lo = t_.begin()->first[v], hi = lo;
        for (const auto& [m, c] : t_) {
            lo = std::min(lo, m[v]);
            hi = std::max(hi, m[v]);
        }
        return {lo, hi};
    }
    /// Drops every term whose total degree in the listed variables exceeds max_deg.
    Poly truncated(const std::vector<int>& vars, int max_deg) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            int d = 0;
            for (int v : vars) d += m[v];
            if (d <= max_deg) r.t_.emplace(m, c);
        }
        return r;
    }
    /// Substitutes the value for x_v (a constant of K).
    Poly evaluated(int v, const K& value) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            int e = m[v];
            K f = c;
            if (e != 0) {
                K p = pow_k(value, e);
                f = f * p;
            }
            r.add_term(m.with(v, 0), f);
        }
        return r;
    }

    /// Monomial dividing every term (componentwise minimum), used to clear
    /// negative exponents.
    Monomial min_monomial() const {
        if (t_.empty()) return Monomial();
        std::vector<int> lo;
        bool first = true;
        for (const auto& [m, c] : t_) {
            std::vector<int> e = m.exponents();
            if (first) {
                lo = e;
                first = false;
                continue;
            }
            std::size_t n = std::max(lo.size(), e.size());
            lo.resize(n, 0);
            e.resize(n, 0);
            for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], e[i]);
        }
        return Monomial(std::move(lo));
    }

    /// Exact quotient a / b when it exists in the Laurent ring.
    static std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
        if (b.is_zero()) return std::nullopt;
        if (a.is_zero()) return Poly();
        // Work with honest polynomials; Laurent shifts are units.
        Monomial sa = a.min_monomial().inverse(), sb = b.min_monomial().inverse();
        Poly num = a.shifted(sa), den = b.shifted(sb);
        auto lead_d = std::prev(den.t_.end());
        Poly q;
        while (!num.is_zero()) {
            auto lead_n = std::prev(num.t_.end());
            if (!lead_d->first.divides(lead_n->first)) return std::nullopt;
            Monomial m = lead_n->first * lead_d->first.inverse();
            K c = lead_n->second / lead_d->second;
            q.add_term(m, c);
            num -= den.shifted(m).scaled(c);
        }
        return q.shifted(sa.inverse() * sb);
    }

    /// Units of the Laurent ring are the nonzero single terms.
    std::optional<Poly> inverse() const {
        if (t_.size() != 1) return std::nullopt;
        const auto& [m, c] = *t_.begin();
        auto ic = qdskit::try_inverse(c);
        if (!ic) return std::nullopt;
        return Poly(m.inverse(), *ic);
    }

private:
    static K pow_k(const K& v, int e) {
        K base = v;
        if (e < 0) {
            auto inv = qdskit::try_inverse(v);
            if (!inv) throw Error(ErrorCode::DivisionByNonUnit, "negative power of zero");
            base = *inv;
            e = -e;
        }
        K r(1);
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    }

    Terms t_;
};

template <class K>
bool is_zero(const Poly<K>& p) {
    return p.is_zero();
}
template <class K>
std::optional<Poly<K>> try_inverse(const Poly<K>& p) {
    return p.inverse();
}
template <class K>
Poly<K> diff(const Poly<K>& p, int v) {
    return p.diff(v);
}
template <class K>
Poly<K> log_diff(const Poly<K>& p, int v) {
    return p.log_diff(v);
}
template <class K>
Poly<K> coeff(const Poly<K>& p, int v, int k) {
    return p.coeff(v, k);
}
template <class K>
std::pair<int, int> degree_range(const Poly<K>& p, int v) {
    return p.degree_range(v);
}

using QPoly = Poly<Rational>;
using GPoly = Poly<GaussianRational>;

/// Names attached to variable indices, for printing and parsing.
using VarNames = std::vector<std::string>;

inline std::string coeff_str(const Rational& q) { return q.str(); }
inline std::string coeff_str(const GaussianRational& z) { return z.str(); }

template <class K>
std::string to_string(const Poly<K>& p, const VarNames& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest terms first, which reads more naturally.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = coeff_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (neg) cs = cs.substr(1);
        first = false;
        std::string mono;
        for (int i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "v" + std::to_string(i);
            if (m[i] != 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) os << cs;
        else if (cs == "1") os << mono;
        else os << cs << "*" << mono;
    }
    return os.str();
}

}  // namespace qdskit
