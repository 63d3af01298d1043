#pragma once

// JSON encodings shared by every module: rationals as "p/q" strings, complex
// numbers as {"re", "im"}, polynomials as [{"exp": [...], "coeff": ...}],
// matrices as row-major nested arrays.

#include "qdskit/core/report.hpp"
#include "qdskit/core/ring.hpp"

#include <json.hpp>

#include <complex>
#include <string>
#include <vector>

namespace qdskit::json {

using Json = nlohmann::ordered_json;

inline Json encode(const Rational& q) { return q.str(); }
inline Json encode(const GaussianRational& z) { return Json{{"re", z.re().str()}, {"im", z.im().str()}}; }
inline Json encode(double x) { return x; }
inline Json encode(const std::complex<double>& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }
inline Json encode(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(e);
    }
    return Json{{"all_pass", r.all_pass()}, {"checks", checks}};
}

template <class K>
Json encode(const Poly<K>& p) {
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) arr.push_back(Json{{"exp", m.exponents()}, {"coeff", encode(c)}});
    return arr;
}
template <class K>
Json encode(const LocalFrac<K>& f) {
    if (f.is_polynomial()) return encode(f.num());
    std::vector<int> den;
    if (f.context())
        for (std::size_t i = 0; i < f.context()->atoms.size(); ++i) den.push_back(f.den_exponent(static_cast<int>(i)));
    return Json{{"num", encode(f.num())}, {"den_atom_powers", den}};
}
template <class F>
Json encode(const SqrtExt<F>& x) {
    return Json{{"even", encode(x.even())}, {"odd", encode(x.odd())}};
}
template <class T>
Json encode(const Matrix<T>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}
template <class T>
Json encode_vector(const std::vector<T>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(encode(x));
    return arr;
}

Rational decode_rational(const Json& j);
QPoly decode_qpoly(const Json& j);
Matrix<Rational> decode_rational_matrix(const Json& j);
Matrix<QPoly> decode_qpoly_matrix(const Json& j);

}  // namespace qdskit::json
