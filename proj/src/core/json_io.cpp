#include "qdskit/core/json_io.hpp"

namespace qdskit::json {

Rational decode_rational(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error(ErrorCode::ParseError, "expected a rational string, got " + j.dump());
}

QPoly decode_qpoly(const Json& j) {
    // A bare rational is accepted as a constant polynomial.
    if (j.is_string() || j.is_number_integer()) return QPoly(decode_rational(j));
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a term list, got " + j.dump());
    QPoly p;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("exp") || !term.contains("coeff"))
            throw Error(ErrorCode::ParseError, "polynomial term needs exp and coeff");
        p.add_term(Monomial(term.at("exp").get<std::vector<int>>()), decode_rational(term.at("coeff")));
    }
    return p;
}

namespace {
template <class T, class F>
Matrix<T> decode_matrix(const Json& j, F&& entry) {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ParseError, "expected a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Matrix<T> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw Error(ErrorCode::ParseError, "ragged matrix row");
        for (int k = 0; k < cols; ++k) m(i, k) = entry(row[static_cast<std::size_t>(k)]);
    }
    return m;
}
}  // namespace

Matrix<Rational> decode_rational_matrix(const Json& j) { return decode_matrix<Rational>(j, decode_rational); }
Matrix<QPoly> decode_qpoly_matrix(const Json& j) { return decode_matrix<QPoly>(j, decode_qpoly); }

}  // namespace qdskit::json
