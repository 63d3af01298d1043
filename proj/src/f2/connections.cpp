#include "qdskit/f2/f2.hpp"

#include "qdskit/core/error.hpp"

namespace qdskit::f2 {

namespace {

SRing c(long num, long den = 1) { return s_const(Rational(num, den)); }
SRing Q1(int e = 1) { return s_var(kQ1, e); }
SRing Q2(int e = 1) { return s_var(kQ2, e); }
SRing T() { return s_var(kTau); }
SRing S() { return s_root(); }
SRing Sinv() { return -(S() * s_inv_disc()); }  // s⁻¹ = s/(1 − 4q₁)
SRing ID() { return s_inv_disc(); }            // (4q₁ − 1)⁻¹

SMatrix grading() { return SMatrix::diagonal({c(0), c(-1), c(-2), c(-1)}); }

SSystem skeleton(const std::string& label) {
    SSystem sys;
    sys.label = label;
    sys.names = q_names();
    sys.coords = {kQ2, kQ1};
    sys.tau = kTau;
    sys.rank = 4;
    sys.weight = 2;
    sys.degrees = std::vector<Rational>{Rational(0), Rational(2), Rational(4), Rational(2)};
    return sys;
}

SMatrix symmetric_pairing(const std::vector<std::tuple<int, int, SRing>>& entries) {
    SMatrix g(4, 4);
    for (const auto& [i, j, v] : entries) {
        g(i, j) = v;
        g(j, i) = v;
    }
    return g;
}

std::vector<SMatrix> omega_printed() {
    const SMatrix tau = T() * SMatrix{{c(0), -c(2) * Q2(), c(0), c(0)},
                                      {-c(2), c(0), -c(4) * Q1() * Q2(), c(0)},
                                      {c(0), -c(4), c(0), -c(2)},
                                      {c(0), c(0), c(2) * Q2() * (c(4) * Q1() - c(1)), c(0)}} +
                        grading();
    const SMatrix q2 = T() * SMatrix{{c(0), -Q2(), c(0), c(0)},
                                     {-c(1), c(0), -c(2) * Q1() * Q2(), c(0)},
                                     {c(0), -c(2), c(0), -c(1)},
                                     {c(0), c(0), Q2() * (c(4) * Q1() - c(1)), c(0)}};
    const SMatrix q1 = T() * SMatrix{{c(0), c(0), c(0), Q2() * Q1() * ID()},
                                     {c(0), c(0), -Q1() * Q2(), c(0)},
                                     {c(0), -c(1), c(0), -c(2) * Q1() * ID()},
                                     {-c(1), c(0), c(2) * Q1() * Q2(), c(0)}} +
                       SMatrix{{c(0), c(0), c(0), c(0)},
                               {c(0), c(0), c(0), Q1() * ID()},
                               {c(0), c(0), c(0), c(0)},
                               {c(0), c(0), c(0), -c(2) * Q1() * ID()}};
    return {tau, q2, q1};
}

std::vector<SMatrix> triangle_printed() {
    const SMatrix tau = T() * SMatrix{{c(0), -c(2), c(0), c(0)},
                                      {-c(2) * Q2(), c(0), -c(4) * Q2(), c(0)},
                                      {c(0), -c(4) * Q1(), c(0), -c(2) * Q2()},
                                      {c(0), c(0), c(2) * (c(4) * Q1() - c(1)), c(0)}} +
                        grading();
    const SMatrix q2 = T() * SMatrix{{c(0), -Q2(-1), c(0), c(0)},
                                     {-c(1), c(0), -c(2), c(0)},
                                     {c(0), -c(2) * Q1() * Q2(-1), c(0), -c(1)},
                                     {c(0), c(0), (c(4) * Q1() - c(1)) * Q2(-1), c(0)}} +
                       SMatrix::diagonal({c(0), -Q2(-1), -Q2(-1), c(0)});
    const SMatrix q1 = T() * SMatrix{{c(0), c(0), c(0), Q2() * Q1(-1) * ID()},
                                     {c(0), c(0), -Q2() * Q1(-1), c(0)},
                                     {c(0), -c(1), c(0), -c(2) * Q2() * ID()},
                                     {-c(1), c(0), c(2), c(0)}} +
                       SMatrix{{c(0), c(0), c(0), c(0)},
                               {c(0), c(0), c(0), Q2() * Q1(-1) * ID()},
                               {c(0), c(0), -Q1(-1), c(0)},
                               {c(0), c(0), c(0), -(c(6) * Q1() - c(1)) * Q1(-1) * ID()}};
    return {tau, q2, q1};
}

std::vector<SMatrix> flat_printed() {
    const SMatrix tau = T() * SMatrix{{c(0), -c(2) * Q2(), c(0), Q2() * S()},
                                      {-c(2), c(0), -Q2(), c(0)},
                                      {c(0), -c(4), c(0), c(0)},
                                      {c(0), c(0), -c(2) * Q2() * S(), c(0)}} +
                        grading();
    const SMatrix q2 = T() * SMatrix{{c(0), -c(1), c(0), c(1, 2) * S()},
                                     {-Q2(-1), c(0), -c(1, 2), c(0)},
                                     {c(0), -c(2) * Q2(-1), c(0), c(0)},
                                     {c(0), c(0), -S(), c(0)}};
    const SMatrix q1 = T() * SMatrix{{c(0), c(0), c(0), -Q2() * Sinv()},
                                     {-c(1, 2) * Q1(-1), c(0), c(0), c(0)},
                                     {c(0), -Q1(-1), c(0), c(1, 2) * Q1(-1) * Sinv()},
                                     {-Q1(-1) * Sinv(), c(0), c(2) * Q2() * Sinv(), c(0)}};
    return {tau, q2, q1};
}

std::vector<SMatrix> can_printed() {
    const SMatrix tau = T() * SMatrix{{c(0), -c(2) * Q2(), c(0), Q2() + Q2() * S()},
                                      {-c(2), c(0), -Q2() - Q2() * S(), c(0)},
                                      {c(0), -c(4), c(0), c(2)},
                                      {c(0), c(0), -c(2) * Q2() * S(), c(0)}} +
                        grading();
    const SMatrix q2 = T() * SMatrix{{c(0), -c(1), c(0), c(1, 2) * (c(1) + S())},
                                     {-Q2(-1), c(0), -c(1, 2) * (c(1) + S()), c(0)},
                                     {c(0), -c(2) * Q2(-1), c(0), Q2(-1)},
                                     {c(0), c(0), -S(), c(0)}};
    const SMatrix q1 = T() * SMatrix{{c(0), c(0), c(0), -Q2() * Sinv()},
                                     {-c(1, 2) * Q1(-1) - c(1, 2) * Q1(-1) * Sinv(), c(0), Q2() * Sinv(), c(0)},
                                     {c(0), -Q1(-1), c(0), c(1, 2) * Q1(-1) * (Sinv() + c(1))},
                                     {-Q1(-1) * Sinv(), c(0), c(2) * Q2() * Sinv(), c(0)}};
    return {tau, q2, q1};
}

SMatrix omega_pairing_printed() {
    return symmetric_pairing(
        {{0, 2, c(1)}, {1, 1, c(2)}, {3, 3, c(2) * Q1() * ID()}, {1, 3, c(1)}, {2, 2, c(2) * Q1() * Q2()}});
}
SMatrix flat_pairing() { return symmetric_pairing({{0, 2, c(1)}, {1, 1, c(2)}, {3, 3, -c(1, 2)}}); }
SMatrix can_pairing() { return symmetric_pairing({{0, 2, c(1)}, {1, 1, c(2)}, {1, 3, -c(1)}}); }

std::string entry_name(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Replaces the entries of `printed` that differ from `derived`, recording each.
SMatrix adjudicate(const SMatrix& printed, const SMatrix& derived, const std::string& where,
                   std::vector<Deviation>& out) {
    SMatrix used = printed;
    for (int i = 0; i < printed.rows(); ++i)
        for (int j = 0; j < printed.cols(); ++j)
            if (!(printed(i, j) == derived(i, j))) {
                out.push_back({where + " " + entry_name(i, j), printed(i, j).str(q_names()), derived(i, j).str(q_names())});
                used(i, j) = derived(i, j);
            }
    return used;
}

const char* kDirections[] = {"tau d/dtau", "q2 d/dq2", "q1 d/dq1"};

}  // namespace

F2Basis parse_f2_basis(const std::string& name) {
    if (name == "triangle") return F2Basis::Triangle;
    if (name == "omega") return F2Basis::Omega;
    if (name == "flat") return F2Basis::Flat;
    if (name == "can") return F2Basis::Can;
    if (name == "can-r") return F2Basis::CanR;
    throw Error(ErrorCode::ParseError, "unknown F2 basis '" + name + "' (expected triangle, omega, flat, can or can-r)");
}

std::string f2_basis_name(F2Basis b) {
    switch (b) {
        case F2Basis::Triangle: return "triangle";
        case F2Basis::Omega: return "omega";
        case F2Basis::Flat: return "flat";
        case F2Basis::Can: return "can";
        case F2Basis::CanR: return "can-r";
    }
    return "?";
}

SMatrix flat_base_change(const Rational& p24) {
    return SMatrix{{c(1), c(0), c(0), c(0)},
                   {c(0), c(1), c(0), -c(1, 2) * S() + s_const(p24)},
                   {c(0), c(0), c(1), c(0)},
                   {c(0), c(0), c(0), S()}};
}

SMatrix triangle_base_change() { return SMatrix::diagonal({c(1), Q2(-1), Q1(-1) * Q2(-1), Q1(-1)}); }

SSystem change_basis(const SSystem& sys, const SMatrix& P, const std::string& label) {
    const SMatrix Pinv = P.inverse();
    SSystem out = sys;
    out.label = label;
    for (int k = 0; k < sys.coord_count(); ++k) {
        const int v = sys.coords[static_cast<std::size_t>(k)];
        out.coord_matrices[static_cast<std::size_t>(k)] =
            Pinv * sys.coord_matrices[static_cast<std::size_t>(k)] * P + Pinv * log_diff(P, v);
    }
    out.tau_matrix = Pinv * sys.tau_matrix * P + Pinv * log_diff(P, sys.tau);
    out.g = P.transpose() * sys.g * P;
    return out;
}

F2Connection build_f2(F2Basis basis, const Rational& p24) {
    if (basis == F2Basis::CanR) throw Error(ErrorCode::RingMismatch, "the r-chart basis lives over polynomials; use build_f2_flat_chart");
    F2Connection conn;
    conn.basis = basis;

    // The omega basis carries the printed metric after checking it against
    // the transport of the flat metric.
    SSystem omega = skeleton("F2 omega");
    {
        auto m = omega_printed();
        omega.tau_matrix = m[0];
        omega.coord_matrices = {m[1], m[2]};
        const SMatrix Pf = flat_base_change(Rational(0));
        const SMatrix Pinv = Pf.inverse();
        const SMatrix transported = Pinv.transpose() * flat_pairing() * Pinv;
        std::vector<Deviation> dev;
        omega.g = adjudicate(omega_pairing_printed(), transported, "omega pairing", dev);
        if (basis == F2Basis::Omega) {
            conn.printed = m;
            conn.deviations = dev;
        }
    }
    if (basis == F2Basis::Omega) {
        conn.sys = omega;
        conn.from_omega = SMatrix::identity(4);
        return conn;
    }

    std::vector<SMatrix> printed;
    SMatrix g;
    std::string label;
    switch (basis) {
        case F2Basis::Triangle:
            conn.from_omega = triangle_base_change();
            printed = triangle_printed();
            label = "F2 triangle";
            break;
        case F2Basis::Flat:
            conn.p24 = p24;
            conn.from_omega = flat_base_change(p24);
            if (p24.is_zero()) printed = flat_printed();
            g = flat_pairing();
            label = "F2 flat p24=" + p24.str();
            break;
        default:
            conn.from_omega = flat_base_change(Rational(-1, 2));
            printed = can_printed();
            g = can_pairing();
            label = "F2 can";
            break;
    }
    const SSystem derived = change_basis(omega, conn.from_omega, label);
    conn.sys = derived;
    if (g.rows() == 4) conn.sys.g = adjudicate(g, derived.g, label + " pairing", conn.deviations);
    if (printed.empty()) return conn;

    conn.printed = printed;
    conn.printed_log = false;
    // Printed q-directions are ∇_{∂q}; multiply by q to compare.
    conn.sys.tau_matrix = adjudicate(printed[0], derived.tau_matrix, label + " " + kDirections[0], conn.deviations);
    conn.sys.coord_matrices[0] =
        adjudicate(Q2() * printed[1], derived.coord_matrices[0], label + " " + kDirections[1], conn.deviations);
    conn.sys.coord_matrices[1] =
        adjudicate(Q1() * printed[2], derived.coord_matrices[1], label + " " + kDirections[2], conn.deviations);
    return conn;
}

qds::PolySystem build_f2_flat_chart() {
    const QPoly r1 = QPoly::var(kR1), r2 = QPoly::var(kR2), t = QPoly::var(kTau);
    auto k = [](long v) { return QPoly(Rational(v)); };
    qds::PolySystem sys;
    sys.label = "F2 can in flat coordinates";
    sys.names = r_names();
    sys.coords = {kR2, kR1};
    sys.tau = kTau;
    sys.rank = 4;
    sys.weight = 2;
    sys.degrees = std::vector<Rational>{Rational(0), Rational(2), Rational(4), Rational(2)};
    const Matrix<QPoly> grade = Matrix<QPoly>::diagonal({k(0), k(-1), k(-2), k(-1)});
    sys.tau_matrix = t * Matrix<QPoly>{{k(0), k(-2) * r2 * (k(1) + r1), k(0), k(2) * r1 * r2},
                                       {k(-2), k(0), k(-2) * r1 * r2, k(0)},
                                       {k(0), k(-4), k(0), k(2)},
                                       {k(0), k(0), k(-2) * (r1 - k(1)) * r2, k(0)}} +
                     grade;
    const Matrix<QPoly> m2 = t * Matrix<QPoly>{{k(0), -(r2 * (k(1) + r1)), k(0), r2 * r1},
                                               {k(-1), k(0), -(r1 * r2), k(0)},
                                               {k(0), k(-2), k(0), k(1)},
                                               {k(0), k(0), -((r1 - k(1)) * r2), k(0)}};
    const Matrix<QPoly> m1 = t * Matrix<QPoly>{{k(0), -(r1 * r2), k(0), r2 * r1},
                                               {k(0), k(0), -(r1 * r2), k(0)},
                                               {k(0), k(-1), k(0), k(0)},
                                               {k(1), k(0), -(r1 * r2), k(0)}};
    sys.coord_matrices = {m2, m1};
    Matrix<QPoly> g(4, 4);
    g(0, 2) = g(2, 0) = k(1);
    g(1, 1) = k(2);
    g(1, 3) = g(3, 1) = k(-1);
    sys.g = g;
    return sys;
}

}  // namespace qdskit::f2
