#include "qdskit/f2/f2.hpp"

#include "qdskit/core/error.hpp"

namespace qdskit::f2 {

namespace {

SRing c(long num, long den = 1) { return s_const(Rational(num, den)); }
SRing Q1(int e = 1) { return s_var(kQ1, e); }
SRing Q2(int e = 1) { return s_var(kQ2, e); }
SRing S() { return s_root(); }

SMatrix column(const std::vector<SRing>& v) {
    SMatrix m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[static_cast<std::size_t>(i)];
    return m;
}

const char* kDirections[] = {"tau d/dtau", "q2 d/dq2", "q1 d/dq1"};

// Matrices of the three log directions in the order (τ, q₂, q₁).
std::vector<SMatrix> log_matrices(const SSystem& sys) {
    return {sys.tau_matrix, sys.coord_matrices[0], sys.coord_matrices[1]};
}

// Printed matrices made logarithmic in the q-directions.
std::vector<SMatrix> printed_log(const F2Connection& conn) {
    auto m = conn.printed;
    if (!conn.printed_log && m.size() == 3) {
        m[1] = Q2() * m[1];
        m[2] = Q1() * m[2];
    }
    return m;
}

SMatrix at_zero(const SMatrix& m, int v) {
    return map_matrix<SRing>(m, [v](const SRing& x) {
        if (!is_zero(x.odd())) throw Error(ErrorCode::UnknownVariable, "odd part has no value on a coordinate axis");
        return SRing(s_context(), f2::at_zero(x.even(), v), QFrac(q_context(), QPoly()));
    });
}

bool nilpotent(const SMatrix& m) {
    SMatrix p = SMatrix::identity(m.rows());
    for (int k = 0; k < m.rows(); ++k) p = p * m;
    return p.is_zero_matrix();
}

// D_k v = τ⁻¹(Ω_k v + q_k∂_k v): the operator θ q_k∇_{q_k}.
SMatrix theta_derivative(const SSystem& sys, int k, const SMatrix& v) {
    const int var = sys.coords[static_cast<std::size_t>(k)];
    return s_var(kTau, -1) * (sys.coord_matrices[static_cast<std::size_t>(k)] * v + log_diff(v, var));
}

GPoly to_gaussian(const QPoly& p) {
    GPoly out;
    for (const auto& [m, coef] : p.terms()) out.add_term(m, GaussianRational(coef));
    return out;
}

Matrix<GPoly> to_gaussian(const Matrix<QPoly>& m) {
    return map_matrix<GPoly>(m, [](const QPoly& p) { return to_gaussian(p); });
}

Matrix<Rational> nilpotent_exp(const Matrix<Rational>& l) {
    const int n = l.rows();
    Matrix<Rational> total = Matrix<Rational>::identity(n), term = total;
    for (int k = 1; k <= n; ++k) {
        term = Rational(1, k) * (term * l);
        total += term;
    }
    if (!(term * l).is_zero_matrix()) throw Error(ErrorCode::DimensionMismatch, "residue is not nilpotent");
    return total;
}

}  // namespace

Report verify_f2(const F2Connection& conn) {
    Report rep;
    rep.append(qds::check_integrability(conn.sys));
    rep.append(qds::check_pairing(conn.sys));

    const F2Connection omega = conn.basis == F2Basis::Omega ? conn : build_f2(F2Basis::Omega);
    const SSystem derived = change_basis(omega.sys, conn.from_omega, conn.sys.label);
    const auto used = log_matrices(conn.sys), want = log_matrices(derived);
    for (int d = 0; d < 3; ++d)
        rep.add(std::string("base change from omega (") + kDirections[d] + ")", used[static_cast<std::size_t>(d)] == want[static_cast<std::size_t>(d)]);
    rep.add("base change from omega (pairing)", conn.sys.g == derived.g);

    if (!conn.printed.empty()) {
        const auto printed = printed_log(conn);
        for (int d = 0; d < 3; ++d)
            rep.add(std::string("printed matrix reproduced (") + kDirections[d] + ")",
                    printed[static_cast<std::size_t>(d)] == want[static_cast<std::size_t>(d)]);
    }

    const SMatrix tau_part = coeff(conn.sys.tau_matrix, kTau, 1);
    const SMatrix q2_part = coeff(conn.sys.coord_matrices[0], kTau, 1);
    rep.add("tau-part(tau d/dtau) = 2 tau-part(q2 d/dq2)", tau_part == c(2) * q2_part);

    if (conn.basis == F2Basis::Omega) {
        rep.add("residue at q2 = 0 nilpotent", nilpotent(at_zero(conn.sys.coord_matrices[0], kQ2)));
        rep.add("residue at q1 = 0 nilpotent", nilpotent(at_zero(conn.sys.coord_matrices[1], kQ1)));
        const SMatrix e0 = column({c(1), c(0), c(0), c(0)});
        const SMatrix inner = theta_derivative(conn.sys, 0, e0) - c(2) * theta_derivative(conn.sys, 1, e0);
        rep.add("theta q2 D (theta q2 D - 2 theta q1 D) omega0 = q2 omega0",
                theta_derivative(conn.sys, 0, inner) == Q2() * e0);
    }
    return rep;
}

Report flat_coordinate_check() {
    Report rep;
    const F2Connection can = build_f2(F2Basis::Can);
    const qds::PolySystem chart = build_f2_flat_chart();
    const auto lift = [](const Matrix<QPoly>& m) { return map_matrix<RFrac>(m, [](const QPoly& p) { return r_lift(p); }); };

    // r₂∂r₂ = q₂∂q₂ and r₁∂r₁ = −s·q₁∂q₁ + (s + 1)/2·q₂∂q₂ under the chart change.
    const SMatrix m2 = can.sys.coord_matrices[0], m1 = can.sys.coord_matrices[1];
    const SMatrix r1_dir = (-S()) * m1 + (c(1, 2) * (S() + c(1))) * m2;
    rep.add("chart change (tau d/dtau)", to_flat_chart(can.sys.tau_matrix) == lift(chart.tau_matrix));
    rep.add("chart change (r2 d/dr2)", to_flat_chart(m2) == lift(chart.coord_matrices[0]));
    rep.add("chart change (r1 d/dr1)", to_flat_chart(r1_dir) == lift(chart.coord_matrices[1]));
    rep.add("chart change (pairing)", to_flat_chart(can.sys.g) == lift(chart.g));

    const RFrac root = chart_root();
    rep.add("branch identity (1 - 4q1) - s^2 = 0", to_flat_chart(c(1) - c(4) * Q1()) - root * root == r_const(0));
    rep.add("r1 d/dr1 log q1 = -s", to_flat_chart(-S()) == r_const(1) - r_const(2) * r_var(kR1) * RFrac::atom_inverse(r_context(), 0),
            "branch s = (r1 - 1)/(r1 + 1)");

    // Residual connection of the omega basis: flat fields map to flat sections
    // under ξ ↦ Φ_ξ ω₀ = a ω₃ + b ω₁ for ξ = a q₁∂q₁ + b q₂∂q₂.
    const F2Connection omega = build_f2(F2Basis::Omega);
    auto flat_field = [&](const SRing& a, const SRing& b) {
        const SMatrix v = column({c(0), b, c(0), a});
        bool ok = true;
        for (int k = 0; k < 2; ++k) {
            const int var = omega.sys.coords[static_cast<std::size_t>(k)];
            ok = ok && (log_diff(v, var) + omega.sys.M0(k) * v).is_zero_matrix();
        }
        return ok;
    };
    const SRing b_can = c(1, 2) * (S() + c(1)), b_flat = c(1, 2) * S();
    rep.add("xi2 = q2 d/dq2 flat", flat_field(c(0), c(1)));
    rep.add("xi1 (p24 = 0) flat", flat_field(-S(), b_flat));
    rep.add("xi1^can flat", flat_field(-S(), b_can));

    const SMatrix& g = omega.sys.g;
    rep.add("S(q2 d/dq2, q2 d/dq2) = 2", g(1, 1) == c(2));
    rep.add("S(q2 d/dq2, q1 d/dq1) = 1", g(1, 3) == c(1));
    rep.add("S(q1 d/dq1, q1 d/dq1) = 2q1/(4q1 - 1)", g(3, 3) == c(2) * Q1() * s_inv_disc());
    auto pair = [&](const SRing& a1, const SRing& b1, const SRing& a2, const SRing& b2) {
        const SMatrix u = column({c(0), b1, c(0), a1}), v = column({c(0), b2, c(0), a2});
        return (u.transpose() * g * v)(0, 0);
    };
    rep.add("metric constant on the can flat fields",
            pair(c(0), c(1), -S(), b_can) == c(1) && pair(-S(), b_can, -S(), b_can) == c(0));
    rep.add("metric constant on the p24 = 0 flat fields",
            pair(c(0), c(1), -S(), b_flat) == c(0) && pair(-S(), b_flat, -S(), b_flat) == c(-1, 2));
    return rep;
}

Monodromy monodromy() {
    const F2Connection omega = build_f2(F2Basis::Omega);
    // The W basis scales ω_i by τ^{w_i}; only entries raising w by one survive.
    const std::vector<int> w{0, 1, 2, 1};
    auto lower = [&](const SMatrix& m) {
        Matrix<Rational> r = constant_at_origin(coeff(m, kTau, 1));
        Matrix<Rational> l(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (r(i, j).is_zero()) continue;
                if (w[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(j)] + 1)
                    throw Error(ErrorCode::DimensionMismatch, "residue does not raise the W grading");
                l(i, j) = r(i, j);
            }
        return nilpotent_exp(l);
    };
    return {lower(omega.sys.tau_matrix), lower(omega.sys.coord_matrices[0]), lower(omega.sys.coord_matrices[1])};
}

Report check_monodromy(const Monodromy& m) {
    Report rep;
    const Matrix<Rational> q2{{1, 0, 0, 0}, {-1, 1, 0, 0}, {1, -2, 1, -1}, {0, 0, 0, 1}};
    const Matrix<Rational> q1{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 1, 0}, {-1, 0, 0, 1}};
    rep.add("M_{q2=0} as printed", m.q2 == q2);
    rep.add("M_{q1=0} as printed", m.q1 == q1);
    rep.add("M_{q2=0}^2 = M_{tau=0}", m.q2 * m.q2 == m.tau);
    auto non_cyclic = [](const Matrix<Rational>& x) {
        // Minimal polynomial of degree < 4: I, M, M², M³ are dependent.
        Matrix<Rational> powers(4, 16), p = Matrix<Rational>::identity(4);
        for (int k = 0; k < 4; ++k) {
            for (int i = 0; i < 16; ++i) powers(k, i) = p(i / 4, i % 4);
            p = p * x;
        }
        return rank(powers) < 4;
    };
    rep.add("M_{tau=0} non-cyclic", non_cyclic(m.tau));
    rep.add("M_{q2=0} non-cyclic", non_cyclic(m.q2));
    rep.add("M_{q1=0} non-cyclic", non_cyclic(m.q1));
    return rep;
}

F2ProductTable f2_quantum_product() {
    const qds::PolySystem chart = build_f2_flat_chart();
    // θ r_k∇_{r_k} = M₁⁽ᵏ⁾ on the flat chart (the residual part vanishes).
    const Matrix<QPoly> h = chart.M1(0), f = chart.M1(1);
    Matrix<QPoly> e0(4, 1);
    e0(0, 0) = QPoly(1);
    const std::vector<Matrix<QPoly>> cols{e0, f * e0, h * e0, h * (f * e0)};
    Matrix<QPoly> gamma(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) gamma(i, j) = cols[static_cast<std::size_t>(j)](i, 0);
    const Matrix<QPoly> ginv = gamma.inverse();
    return {ginv * f * gamma, ginv * h * gamma, gamma.transpose() * chart.g * gamma, gamma};
}

Report check_f2_product(const F2ProductTable& t) {
    Report rep;
    const QPoly r1 = QPoly::var(kR1), r2 = QPoly::var(kR2), o(0), i(1);
    const QPoly rr = r1 * r2, b = r2 * (i - r1);
    const Matrix<QPoly> f{{o, rr, o, o}, {i, o, o, o}, {o, o, o, rr}, {o, o, i, o}};
    const Matrix<QPoly> h{{o, o, b, o}, {o, o, o, b}, {i, o, o, QPoly(2) * rr}, {o, i, QPoly(2), o}};
    const Matrix<QPoly> g{{o, o, o, i}, {o, o, i, o}, {o, i, QPoly(2), o}, {i, o, o, QPoly(2) * rr}};
    rep.add("f o matrix as printed", t.f_op == f);
    rep.add("H o matrix as printed", t.h_op == h);
    rep.add("metric as printed", t.metric == g);
    qds::ProductTable<QPoly> table;
    table.primitive = 0;
    table.ops = {Matrix<QPoly>::identity(4), t.f_op, t.h_op, t.h_op * t.f_op};
    bool columns = true;
    for (int a = 0; a < 4; ++a) {
        auto col = table.product(a, 0);
        for (int k = 0; k < 4; ++k) columns = columns && col[static_cast<std::size_t>(k)] == QPoly(k == a ? 1 : 0);
    }
    rep.add("multiplication operators send 1 to the basis", columns);
    rep.append(qds::check_product(table, t.metric));
    rep.add("g(f, H) = 1", t.metric(1, 2) == i);
    rep.add("g(H, H) = 2", t.metric(2, 2) == QPoly(2));
    rep.add("g(1, H o f) = 1", t.metric(0, 3) == i);
    rep.add("H o (H - 2f) = r2(1 - r1)", t.h_op * (t.h_op - QPoly(2) * t.f_op) == b * Matrix<QPoly>::identity(4));
    return rep;
}

CrepantLimit crepant_limit() {
    using G = GaussianRational;
    const qds::PolySystem chart = build_f2_flat_chart();
    CrepantLimit out;
    out.in_can = GPoly(G(Rational(-1, 2))) * to_gaussian(chart.M1(0));
    const GPoly o(0), one(1), half(G(Rational(1, 2))), ii(G::i()), ihalf(G(Rational(0), Rational(1, 2)));
    const Matrix<GPoly> B{{one, o, o, o}, {o, half, o, ihalf}, {o, o, half, o}, {o, o, o, ii}};
    out.in_orbifold = B.inverse() * out.in_can * B;
    out.at_r1 = map_matrix<GPoly>(out.in_orbifold, [](const GPoly& p) { return p.evaluated(kR1, G(-1)); });
    const std::vector<GPoly> values{GPoly::var(kR1), GPoly(G(Rational(0), Rational(-1))) * GPoly::var(kR2), GPoly::var(kTau)};
    const std::function<GPoly(const G&)> lift = [](const G& x) { return GPoly(x); };
    auto to_q = [&](const GPoly& p) { return substitute<GPoly>(p, values, lift); };
    out.p_product = map_matrix<GPoly>(out.at_r1, to_q);

    // Images of 1, H, H∘f, f (can-basis vectors e₀, −e₁, e₂ + r₁r₂e₀, e₃).
    const Matrix<GPoly> gamma = to_gaussian(f2_quantum_product().gamma);
    const Matrix<GPoly> coords = B.inverse() * gamma;
    for (int k : {0, 2, 3, 1}) {
        std::vector<GPoly> v;
        for (int i = 0; i < 4; ++i) v.push_back(to_q(coords(i, k).evaluated(kR1, G(-1))));
        out.images.push_back(v);
    }
    const GPoly q = GPoly::var(kR2);
    const VarNames names{"r1", "Q", "tau"};
    if (!(out.images[2][0] == q))
        out.deviations.push_back({"crepant image of H o f, coefficient of 1", to_string(q, names), to_string(out.images[2][0], names)});
    return out;
}

Report check_crepant(const CrepantLimit& cl) {
    using G = GaussianRational;
    Report rep;
    const GPoly r1 = GPoly::var(kR1), r2 = GPoly::var(kR2), o(0), one(1), two(2);
    const GPoly half(G(Rational(1, 2))), ihalf(G(Rational(0), Rational(1, 2))), q = GPoly::var(kR2);
    auto scale = [](const GPoly& s, Matrix<GPoly> m) { return s * m; };
    const Matrix<GPoly> in_can = scale(half, Matrix<GPoly>{{o, r2 * (one + r1), o, -(r2 * r1)},
                                                           {one, o, r2 * r1, o},
                                                           {o, two, o, -one},
                                                           {o, o, r2 * (r1 - one), o}});
    const Matrix<GPoly> in_orb = scale(half, Matrix<GPoly>{{o, half * r2 * (one + r1), o, ihalf * r2 * (one - r1)},
                                                           {two, o, half * r2 * (r1 + one), o},
                                                           {o, two, o, o},
                                                           {o, o, ihalf * r2 * (one - r1), o}});
    const Matrix<GPoly> at_r1{{o, o, o, ihalf * r2}, {one, o, o, o}, {o, one, o, o}, {o, o, ihalf * r2, o}};
    const Matrix<GPoly> p_prod{{o, o, o, half * q}, {one, o, o, o}, {o, one, o, o}, {o, o, half * q, o}};
    rep.add("-1/2 theta r2 D in the can basis as printed", cl.in_can == in_can);
    rep.add("orbifold basis matrix as printed", cl.in_orbifold == in_orb);
    rep.add("matrix at r1 = -1 as printed", cl.at_r1 == at_r1);
    rep.add("p o matrix of P(1,1,2) after r2 = -iQ", cl.p_product == p_prod);
    const GPoly mi(G(Rational(0), Rational(-1)));
    rep.add("image of 1 is 1", cl.images[0] == std::vector<GPoly>{one, o, o, o});
    rep.add("image of H is -2p", cl.images[1] == std::vector<GPoly>{o, -two, o, o});
    rep.add("image of f is -p - i 1_{1/2}", cl.images[3] == std::vector<GPoly>{o, -one, o, mi});
    rep.add("image of H o f is 2p^2 + iQ 1", cl.images[2] == std::vector<GPoly>{GPoly(G::i()) * q, o, two, o},
            "printed coefficient of 1 is Q; logged as a deviation");
    return rep;
}

F2Report f2_full_check() {
    F2Report out;
    auto take = [&](const std::vector<Deviation>& d) { out.deviations.insert(out.deviations.end(), d.begin(), d.end()); };
    for (auto basis : {F2Basis::Triangle, F2Basis::Omega, F2Basis::Flat, F2Basis::Can}) {
        const F2Connection conn = build_f2(basis);
        out.report.append(verify_f2(conn), f2_basis_name(basis) + ": ");
        take(conn.deviations);
    }
    const F2Connection other = build_f2(F2Basis::Flat, Rational(1, 3));
    out.report.append(verify_f2(other), "flat p24=1/3: ");
    const qds::PolySystem chart = build_f2_flat_chart();
    out.report.append(qds::check_integrability(chart), "can-r: ");
    out.report.append(qds::check_pairing(chart), "can-r: ");
    out.report.append(flat_coordinate_check(), "flat coordinates: ");
    out.report.append(check_monodromy(monodromy()), "monodromy: ");
    out.report.append(check_f2_product(f2_quantum_product()), "product: ");
    const CrepantLimit cl = crepant_limit();
    out.report.append(check_crepant(cl), "crepant: ");
    take(cl.deviations);
    return out;
}

namespace {

template <class T>
json::Json matrix_entry(const Matrix<T>& m, const VarNames& names) {
    json::Json text = json::Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json::Json row = json::Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(str(m(i, j), names));
        text.push_back(row);
    }
    return json::Json{{"text", text}, {"exact", json::encode(m)}};
}

json::Json encode_deviations(const std::vector<Deviation>& ds) {
    json::Json arr = json::Json::array();
    for (const auto& d : ds) arr.push_back(json::Json{{"where", d.where}, {"printed", d.printed}, {"used", d.used}});
    return arr;
}

}  // namespace

json::Json encode_connection(const F2Connection& conn) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "F2Connection";
    j["basis"] = f2_basis_name(conn.basis);
    if (conn.basis == F2Basis::Flat) j["p24"] = conn.p24.str();
    j["variables"] = conn.sys.names;
    j["root"] = "s = (1 - 4*q1)^(1/2)";
    json::Json ms = json::Json::object();
    const auto mats = log_matrices(conn.sys);
    for (int d = 0; d < 3; ++d) ms[kDirections[d]] = matrix_entry(mats[static_cast<std::size_t>(d)], conn.sys.names);
    j["matrices"] = ms;
    j["pairing"] = matrix_entry(conn.sys.g, conn.sys.names);
    j["base_change_from_omega"] = matrix_entry(conn.from_omega, conn.sys.names);
    j["deviations"] = encode_deviations(conn.deviations);
    return j;
}

json::Json encode_f2_report(const F2Report& r) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "F2Report";
    json::Json checks = json::Json::array();
    for (const auto& c : r.report.checks) {
        json::Json e{{"name", c.name}, {"verdict", c.pass ? "pass" : "fail"}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["deviations"] = encode_deviations(r.deviations);
    j["all_pass"] = r.report.all_pass();
    return j;
}

}  // namespace qdskit::f2
