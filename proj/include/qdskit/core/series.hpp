#pragma once

#include "qdskit/core/error.hpp"
#include "qdskit/core/matrix.hpp"

#include <optional>
#include <vector>

namespace qdskit {

/// Power series Σ_{k<order} c_k x^k in one distinguished variable with
/// coefficients in T (scalars or matrices).  Nothing at index ≥ order is
/// ever stored or inspected.
template <class T>
class TruncatedSeries {
public:
    TruncatedSeries(int order, T zero) : zero_(std::move(zero)), c_(static_cast<std::size_t>(order), zero_) {
        if (order < 0) throw Error(ErrorCode::DimensionMismatch, "negative truncation order");
    }

    int order() const { return static_cast<int>(c_.size()); }
    const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    const T& zero() const { return zero_; }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check(o);
        for (int k = 0; k < order(); ++k) (*this)[k] += o[k];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check(o);
        for (int k = 0; k < order(); ++k) (*this)[k] -= o[k];
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check(b);
        TruncatedSeries r(a.order(), a.zero_);
        for (int i = 0; i < a.order(); ++i)
            for (int j = 0; i + j < a.order(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order() == b.order() && a.c_ == b.c_;
    }

private:
    void check(const TruncatedSeries& o) const {
        if (o.order() != order()) throw Error(ErrorCode::DimensionMismatch, "series truncation orders differ");
    }

    T zero_;
    std::vector<T> c_;
};

namespace detail {
template <class T>
std::optional<T> series_unit_inverse(const T& x) {
    return try_inverse(x);
}
template <class T>
std::optional<Matrix<T>> series_unit_inverse(const Matrix<T>& m) {
    return m.try_inverse();
}
}  // namespace detail

/// Inverse of a series whose constant term is a unit, via
/// b₀ = h₀⁻¹, b_k = −h₀⁻¹ Σ_{i=1}^{k} h_i b_{k−i}.
template <class T>
TruncatedSeries<T> series_invert(const TruncatedSeries<T>& h) {
    TruncatedSeries<T> b(h.order(), h.zero());
    if (h.order() == 0) return b;
    auto h0inv = detail::series_unit_inverse(h[0]);
    if (!h0inv) throw Error(ErrorCode::NonUnitConstantTerm, "constant term of the series is not invertible");
    b[0] = *h0inv;
    for (int k = 1; k < h.order(); ++k) {
        T acc = h.zero();
        for (int i = 1; i <= k; ++i) acc += h[i] * b[k - i];
        b[k] = -(*h0inv * acc);
    }
    return b;
}

}  // namespace qdskit
