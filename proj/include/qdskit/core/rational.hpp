#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace qdskit {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I v) : v_(static_cast<long>(v)) {}

    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text);

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    /// Largest integer not above the value.
    mpz_class floor() const;
    /// Smallest integer not below the value.
    mpz_class ceil() const;
    long floor_long() const { return floor().get_si(); }
    long ceil_long() const { return ceil().get_si(); }

    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational pow(long e) const;
    double to_double() const { return v_.get_d(); }

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline std::optional<Rational> try_inverse(const Rational& q) {
    if (q.is_zero()) return std::nullopt;
    return Rational(1) / q;
}

/// lcm of positive integers, as an integer.
long lcm_long(long a, long b);

}  // namespace qdskit

template <>
struct std::hash<qdskit::Rational> {
    std::size_t operator()(const qdskit::Rational& q) const noexcept {
        return std::hash<std::string>{}(q.str());
    }
};
