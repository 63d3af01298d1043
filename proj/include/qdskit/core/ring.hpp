#pragma once

// Uniform helpers over the supported rings: printing and evaluation
// homomorphisms out of a polynomial ring.

#include "qdskit/core/gaussian.hpp"
#include "qdskit/core/local_frac.hpp"
#include "qdskit/core/matrix.hpp"
#include "qdskit/core/poly.hpp"
#include "qdskit/core/rational.hpp"
#include "qdskit/core/sqrt_ext.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qdskit {

inline std::string str(const Rational& q, const VarNames& = {}) { return q.str(); }
inline std::string str(const GaussianRational& z, const VarNames& = {}) { return z.str(); }
template <class K>
std::string str(const Poly<K>& p, const VarNames& names) {
    return to_string(p, names);
}
template <class K>
std::string str(const LocalFrac<K>& f, const VarNames& names) {
    return f.str(names);
}
template <class F>
std::string str(const SqrtExt<F>& x, const VarNames& names) {
    return x.str(names);
}
template <class T>
std::string str(const Matrix<T>& m, const VarNames& names) {
    return m.str([&](const T& x) { return str(x, names); });
}

// Constants are killed by every derivation.
inline Rational diff(const Rational&, int) { return Rational(0); }
inline Rational log_diff(const Rational&, int) { return Rational(0); }
inline Rational coeff(const Rational& q, int, int k) { return k == 0 ? q : Rational(0); }
inline std::pair<int, int> degree_range(const Rational& q, int) { return q.is_zero() ? std::pair{0, -1} : std::pair{0, 0}; }

/// Power with negative exponents through the ring inverse.
template <class T>
T ring_pow(const T& base, int e) {
    T b = base;
    if (e < 0) {
        auto inv = try_inverse(base);
        if (!inv) throw Error(ErrorCode::DivisionByNonUnit, "negative power of a non-unit");
        b = *inv;
        e = -e;
    }
    T r(1);
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/// Ring homomorphism Poly<K> → T sending x_i to values[i] and constants
/// through lift.  Variables beyond values.size() must not occur.
template <class T, class K>
T substitute(const Poly<K>& p, const std::vector<T>& values, const std::function<T(const K&)>& lift) {
    T total(0);
    for (const auto& [m, c] : p.terms()) {
        T term = lift(c);
        for (int i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= static_cast<int>(values.size()))
                throw Error(ErrorCode::UnknownVariable, "substitution misses variable " + std::to_string(i));
            term = term * ring_pow(values[static_cast<std::size_t>(i)], m[i]);
        }
        total += term;
    }
    return total;
}

/// Extension of the homomorphism to a localized element; every atom must map to a unit.
template <class T, class K>
T substitute(const LocalFrac<K>& f, const std::vector<T>& values, const std::function<T(const K&)>& lift) {
    T r = substitute(f.num(), values, lift);
    if (!f.context()) return r;
    const auto& atoms = f.context()->atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        int e = f.den_exponent(static_cast<int>(i));
        if (e == 0) continue;
        r = r * ring_pow(substitute(atoms[i], values, lift), -e);
    }
    return r;
}

template <class T, class S, class F>
Matrix<T> map_matrix(const Matrix<S>& m, F&& f) {
    Matrix<T> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
    return r;
}

/// Entrywise x_v ∂/∂x_v.
template <class T>
Matrix<T> log_diff(const Matrix<T>& m, int v) {
    return map_matrix<T>(m, [v](const T& x) { return log_diff(x, v); });
}
/// Entrywise ∂/∂x_v.
template <class T>
Matrix<T> diff(const Matrix<T>& m, int v) {
    return map_matrix<T>(m, [v](const T& x) { return diff(x, v); });
}
/// Entrywise coefficient of x_v^k.
template <class T>
Matrix<T> coeff(const Matrix<T>& m, int v, int k) {
    return map_matrix<T>(m, [v, k](const T& x) { return coeff(x, v, k); });
}
/// Range of exponents of x_v over all entries (empty range when zero).
template <class T>
std::pair<int, int> degree_range(const Matrix<T>& m, int v) {
    int lo = 0, hi = -1;
    bool any = false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (is_zero(m(i, j))) continue;
            auto [a, b] = degree_range(m(i, j), v);
            if (!any) {
                lo = a;
                hi = b;
                any = true;
            } else {
                lo = std::min(lo, a);
                hi = std::max(hi, b);
            }
        }
    return {lo, hi};
}

}  // namespace qdskit
