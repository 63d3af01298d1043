#pragma once

#include "qdskit/core/error.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdskit {

namespace detail {
// Free-function lookup kept outside Matrix so the member try_inverse does not hide it.
template <class T>
std::optional<T> unit_inverse(const T& x) {
    return try_inverse(x);
}
}  // namespace detail

/// Dense row-major matrix over any commutative ring T providing
/// is_zero(T) and try_inverse(T).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, T(0)) {
        if (rows < 0 || cols < 0) throw Error(ErrorCode::DimensionMismatch, "negative dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.r_; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool is_square() const { return r_ == c_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (is_zero(x)) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!is_zero(b(k, j))) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator*(const T& s, const Matrix& b) {
        Matrix m = b;
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    bool is_zero_matrix() const {
        for (const auto& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Matrix<U> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    std::vector<T> column(int j) const {
        std::vector<T> v;
        for (int i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    /// Inverse by Gauss-Jordan with unit pivots, falling back to the adjugate
    /// when the elimination meets no unit pivot in a column.
    std::optional<Matrix> try_inverse() const {
        if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
        int n = r_;
        Matrix a = *this, inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            std::optional<T> pinv;
            for (int row = col; row < n && piv < 0; ++row) {
                if (is_zero(a(row, col))) continue;
                pinv = detail::unit_inverse(a(row, col));
                if (pinv) piv = row;
            }
            if (piv < 0) return adjugate_inverse();
            if (piv != col) {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            for (int j = 0; j < n; ++j) {
                a(col, j) = a(col, j) * *pinv;
                inv(col, j) = inv(col, j) * *pinv;
            }
            for (int row = 0; row < n; ++row) {
                if (row == col || is_zero(a(row, col))) continue;
                T f = a(row, col);
                for (int j = 0; j < n; ++j) {
                    if (!is_zero(a(col, j))) a(row, j) -= f * a(col, j);
                    if (!is_zero(inv(col, j))) inv(row, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }
    Matrix inverse() const {
        auto m = try_inverse();
        if (!m) throw Error(ErrorCode::DivisionByNonUnit, "matrix is not invertible over its ring");
        return *m;
    }

    /// Determinant by cofactor expansion (only used on small matrices).
    T determinant() const {
        if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
        std::vector<int> cols(static_cast<std::size_t>(c_));
        for (int j = 0; j < c_; ++j) cols[static_cast<std::size_t>(j)] = j;
        return det_rec(0, cols);
    }

    void swap_rows(int i, int j) {
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    std::string str(const std::function<std::string(const T&)>& fmt) const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? ", [" : "[";
            for (int j = 0; j < c_; ++j) s += (j ? ", " : "") + fmt((*this)(i, j));
            s += "]";
        }
        return s + "]";
    }

private:
    void same_shape(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
    }

    T det_rec(int row, const std::vector<int>& cols) const {
        if (cols.empty()) return T(1);
        T total(0);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const T& x = (*this)(row, cols[k]);
            if (is_zero(x)) continue;
            std::vector<int> rest = cols;
            rest.erase(rest.begin() + static_cast<long>(k));
            T term = x * det_rec(row + 1, rest);
            if (k % 2) total -= term;
            else total += term;
        }
        return total;
    }

    std::optional<Matrix> adjugate_inverse() const {
        int n = r_;
        if (n > 6) return std::nullopt;
        auto dinv = detail::unit_inverse(determinant());
        if (!dinv) return std::nullopt;
        Matrix inv(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Matrix minor(n - 1, n - 1);
                for (int a = 0, ra = 0; a < n; ++a) {
                    if (a == j) continue;
                    for (int b = 0, cb = 0; b < n; ++b) {
                        if (b == i) continue;
                        minor(ra, cb++) = (*this)(a, b);
                    }
                    ++ra;
                }
                T c = minor.determinant() * *dinv;
                inv(i, j) = (i + j) % 2 ? -c : c;
            }
        return inv;
    }

    int r_ = 0;
    int c_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

/// Rank over a field (every nonzero entry must be invertible).
template <class T>
int rank(Matrix<T> a) {
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int piv = -1;
        for (int row = r; row < a.rows(); ++row)
            if (!is_zero(a(row, col))) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        a.swap_rows(piv, r);
        auto inv = detail::unit_inverse(a(r, col));
        if (!inv) throw Error(ErrorCode::DivisionByNonUnit, "rank needs field entries");
        for (int row = r + 1; row < a.rows(); ++row) {
            if (is_zero(a(row, col))) continue;
            T f = a(row, col) * *inv;
            for (int j = col; j < a.cols(); ++j) a(row, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace qdskit
