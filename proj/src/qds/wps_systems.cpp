#include "qdskit/qds/wps_systems.hpp"

#include "qdskit/core/error.hpp"

namespace qdskit::qds {

namespace {

constexpr int kCoord = 0;
constexpr int kTau = 1;

QPoly xpow(const Rational& c, int e) { return QPoly(Monomial::var(kCoord, e), c); }

}  // namespace

PolySystem build_wps_system(const wps::WeightData& wd, WpsBasis basis) {
    const int mu = wd.mu;
    const QPoly tau = QPoly::var(kTau);
    const Rational rmu(mu);
    PolySystem sys;
    sys.rank = mu;
    sys.weight = wd.n;
    sys.coords = {kCoord};
    sys.tau = kTau;

    // A₀ with its corner entry; the exponents depend on the basis.
    Matrix<QPoly> a0(mu, mu);
    Matrix<QPoly> m(mu, mu);
    if (basis == WpsBasis::Omega) {
        sys.label = "wps omega";
        sys.names = {"x", "tau"};
        for (int i = 0; i + 1 < mu; ++i) a0(i + 1, i) = QPoly(rmu);
        a0(0, mu - 1) = xpow(rmu / wd.w_pow_w, 1);
        Matrix<QPoly> m0(mu, mu);
        for (int i = 0; i < mu; ++i) m0(i, i) = QPoly(wd.c[i]);
        m = m0 - (tau * QPoly(Rational(1) / rmu)) * a0;
    } else {
        sys.label = "wps rescaled-flat";
        sys.names = {"zeta", "tau"};
        auto exponent = [&](const Rational& gap) {
            Rational e = gap / wd.r;
            if (!e.is_integer()) throw Error(ErrorCode::ExponentOutOfRange, "non-integral zeta exponent");
            return static_cast<int>(e.num().get_si());
        };
        for (int i = 0; i + 1 < mu; ++i) a0(i + 1, i) = xpow(rmu, exponent(wd.c[i + 1] - wd.c[i]));
        a0(0, mu - 1) = xpow(rmu / wd.w_pow_w, exponent(Rational(1) - wd.c[mu - 1]));
        m = (tau * QPoly(-(Rational(1) / (wd.r * rmu)))) * a0;
    }
    sys.coord_matrices = {m};

    Matrix<QPoly> ainf(mu, mu);
    for (int i = 0; i < mu; ++i) ainf(i, i) = QPoly(wd.alpha[i]);
    sys.tau_matrix = -(tau * a0 + ainf);

    // Pairing supported on k + l = n (k ≤ n) and k + l = μ + n (k ≥ n + 1).
    Matrix<QPoly> g(mu, mu);
    const Rational low = Rational(1) / wd.w_prod;
    const Rational high = low / wd.w_pow_w;
    for (int k = 0; k < mu; ++k) {
        int l = wd.bar[k];
        if (k <= wd.n) g(k, l) = QPoly(low);
        else g(k, l) = basis == WpsBasis::Omega ? xpow(high, 1) : QPoly(high);
    }
    sys.g = g;

    std::vector<Rational> deg;
    for (const auto& a : wd.alpha) deg.push_back(Rational(2) * a);
    sys.degrees = deg;
    return sys;
}

PolySystem build_projective_space(int n) {
    PolySystem sys = build_wps_system(wps::build_weight_data(std::vector<long>(static_cast<std::size_t>(n) + 1, 1)),
                                      WpsBasis::Omega);
    sys.label = "projective space P^" + std::to_string(n);
    return sys;
}

WpsBasis parse_basis(const std::string& name) {
    if (name == "omega") return WpsBasis::Omega;
    if (name == "rescaled-flat" || name == "flat") return WpsBasis::RescaledFlat;
    throw Error(ErrorCode::ParseError, "unknown basis '" + name + "' (expected omega or rescaled-flat)");
}

std::string basis_name(WpsBasis basis) { return basis == WpsBasis::Omega ? "omega" : "rescaled-flat"; }

Matrix<Rational> evaluate_constant(const Matrix<QPoly>& m, const PolySystem& sys, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != sys.coord_count())
        throw Error(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
    return map_matrix<Rational>(m, [&](const QPoly& p) {
        QPoly q = p;
        for (int k = 0; k < sys.coord_count(); ++k) q = q.evaluated(sys.coords[static_cast<std::size_t>(k)], point[static_cast<std::size_t>(k)]);
        if (!q.is_constant()) throw Error(ErrorCode::UnknownVariable, "entry depends on a variable left free");
        return q.constant_term();
    });
}

bool is_pre_primitive(const Matrix<Rational>& a0, const std::vector<Matrix<Rational>>& phis,
                      const std::vector<Rational>& candidate) {
    const int mu = a0.rows();
    std::vector<Matrix<Rational>> ops{a0};
    ops.insert(ops.end(), phis.begin(), phis.end());
    // Grow the span until it is stable under every operator.
    std::vector<std::vector<Rational>> span;
    auto span_rank = [&](const std::vector<std::vector<Rational>>& vs) {
        if (vs.empty()) return 0;
        Matrix<Rational> m(mu, static_cast<int>(vs.size()));
        for (int c = 0; c < static_cast<int>(vs.size()); ++c)
            for (int i = 0; i < mu; ++i) m(i, c) = vs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        return rank(m);
    };
    std::vector<std::vector<Rational>> todo{candidate};
    while (!todo.empty()) {
        auto v = todo.back();
        todo.pop_back();
        auto trial = span;
        trial.push_back(v);
        if (span_rank(trial) == static_cast<int>(span.size())) continue;
        span = std::move(trial);
        Matrix<Rational> col(mu, 1);
        for (int i = 0; i < mu; ++i) col(i, 0) = v[static_cast<std::size_t>(i)];
        for (const auto& op : ops) todo.push_back((op * col).column(0));
    }
    return static_cast<int>(span.size()) == mu;
}

bool is_pre_primitive(const PolySystem& sys, const std::vector<Rational>& point, int candidate) {
    std::vector<Matrix<Rational>> phis;
    for (int k = 0; k < sys.coord_count(); ++k) phis.push_back(evaluate_constant(sys.Phi(k), sys, point));
    std::vector<Rational> v(static_cast<std::size_t>(sys.rank), Rational(0));
    v[static_cast<std::size_t>(candidate)] = Rational(1);
    return is_pre_primitive(evaluate_constant(sys.A0(), sys, point), phis, v);
}

json::Json encode_system(const PolySystem& sys) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "QDSystem";
    j["label"] = sys.label;
    j["variables"] = sys.names;
    std::vector<std::string> coords;
    for (int c : sys.coords) coords.push_back(sys.names[static_cast<std::size_t>(c)]);
    j["coordinates"] = coords;
    j["tau"] = sys.names[static_cast<std::size_t>(sys.tau)];
    j["rank"] = sys.rank;
    j["weight"] = sys.weight;
    json::Json ms = json::Json::array();
    for (const auto& m : sys.coord_matrices) ms.push_back(json::encode(m));
    j["coordinate_matrices"] = ms;
    j["tau_matrix"] = json::encode(sys.tau_matrix);
    j["pairing"] = json::encode(sys.g);
    if (sys.degrees) j["degrees"] = json::encode_vector(*sys.degrees);
    return j;
}

PolySystem decode_system(const json::Json& j) {
    try {
        PolySystem sys;
        sys.label = j.value("label", std::string("input"));
        sys.names = j.at("variables").get<VarNames>();
        auto index_of = [&](const std::string& name) {
            for (std::size_t i = 0; i < sys.names.size(); ++i)
                if (sys.names[i] == name) return static_cast<int>(i);
            throw Error(ErrorCode::UnknownVariable, "undeclared variable '" + name + "'");
        };
        for (const auto& c : j.at("coordinates")) sys.coords.push_back(index_of(c.get<std::string>()));
        sys.tau = index_of(j.at("tau").get<std::string>());
        sys.rank = j.at("rank").get<int>();
        sys.weight = j.at("weight").get<int>();
        for (const auto& m : j.at("coordinate_matrices")) sys.coord_matrices.push_back(json::decode_qpoly_matrix(m));
        sys.tau_matrix = json::decode_qpoly_matrix(j.at("tau_matrix"));
        sys.g = json::decode_qpoly_matrix(j.at("pairing"));
        if (j.contains("degrees")) {
            std::vector<Rational> deg;
            for (const auto& d : j.at("degrees")) deg.push_back(json::decode_rational(d));
            sys.degrees = deg;
        }
        auto square = [&](const Matrix<QPoly>& m) { return m.rows() == sys.rank && m.cols() == sys.rank; };
        bool ok = square(sys.tau_matrix) && square(sys.g) &&
                  static_cast<int>(sys.coord_matrices.size()) == sys.coord_count();
        for (const auto& m : sys.coord_matrices) ok = ok && square(m);
        if (!ok) throw Error(ErrorCode::DimensionMismatch, "matrix sizes disagree with the declared rank");
        return sys;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace qdskit::qds
