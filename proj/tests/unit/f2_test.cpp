#include "qdskit/core/error.hpp"
#include "qdskit/f2/f2.hpp"

#include <gtest/gtest.h>

using namespace qdskit;
using f2::F2Basis;

namespace {

std::string failures(const Report& rep) {
    std::string s;
    for (const auto* f : rep.failures()) s += f->name + "; ";
    return s;
}

}  // namespace

TEST(F2, EveryBasisIsFlatAndReproducesItsMatrices) {
    for (auto b : {F2Basis::Triangle, F2Basis::Omega, F2Basis::Flat, F2Basis::Can}) {
        const auto conn = f2::build_f2(b);
        const Report rep = f2::verify_f2(conn);
        EXPECT_TRUE(rep.all_pass()) << f2::f2_basis_name(b) << ": " << failures(rep);
        EXPECT_NE(rep.find("printed matrix reproduced (tau d/dtau)"), nullptr);
    }
}

TEST(F2, FlatFamilyStaysFlatForOtherParameters) {
    for (const Rational& p : {Rational(1, 3), Rational(-2), Rational(5, 7)}) {
        const Report rep = f2::verify_f2(f2::build_f2(F2Basis::Flat, p));
        EXPECT_TRUE(rep.all_pass()) << p.str() << ": " << failures(rep);
    }
}

TEST(F2, PerturbedEntryBreaksFlatness) {
    auto conn = f2::build_f2(F2Basis::Omega);
    auto& m = conn.sys.coord_matrices[f2::kQ1];
    m(0, 1) = m(0, 1) + f2::s_var(f2::kQ2) * f2::s_var(f2::kTau);
    const Report rep = f2::verify_f2(conn);
    EXPECT_FALSE(rep.all_pass());
}

TEST(F2, PerturbedPairingBreaksMetricRelations) {
    auto conn = f2::build_f2(F2Basis::Can);
    conn.sys.g(0, 0) = conn.sys.g(0, 0) + f2::s_const(Rational(1));
    EXPECT_FALSE(f2::verify_f2(conn).all_pass());
}

TEST(F2, CanonicalRChartIsPolynomial) {
    const auto sys = f2::build_f2_flat_chart();
    EXPECT_TRUE(qds::check_integrability(sys).all_pass());
    EXPECT_TRUE(qds::check_pairing(sys).all_pass());
    EXPECT_TRUE(sys.is_flat());
    try {
        f2::build_f2(F2Basis::CanR);
        FAIL() << "r-chart built in the q-chart ring";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
    }
}

TEST(F2, FlatCoordinates) {
    const Report rep = f2::flat_coordinate_check();
    EXPECT_TRUE(rep.all_pass()) << failures(rep);
}

TEST(F2, Monodromy) {
    const auto m = f2::monodromy();
    EXPECT_TRUE(f2::check_monodromy(m).all_pass());
    EXPECT_EQ(m.q2 * m.q2, m.tau);
    EXPECT_EQ(m.q1 * m.q2, m.q2 * m.q1);
    // Unipotent: (M − I)⁴ = 0.
    const auto id = Matrix<Rational>::identity(4);
    for (const auto* mat : {&m.tau, &m.q2, &m.q1}) {
        const auto n = *mat - id;
        EXPECT_TRUE((n * n * n * n).is_zero_matrix());
    }
}

TEST(F2, QuantumProduct) {
    const auto t = f2::f2_quantum_product();
    EXPECT_TRUE(f2::check_f2_product(t).all_pass());
    EXPECT_EQ(t.f_op * t.h_op, t.h_op * t.f_op);
}

TEST(F2, CrepantLimit) {
    const auto c = f2::crepant_limit();
    const Report rep = f2::check_crepant(c);
    EXPECT_TRUE(rep.all_pass()) << failures(rep);
    ASSERT_EQ(c.deviations.size(), 1u);
    EXPECT_EQ(c.deviations[0].printed, "Q");
    EXPECT_EQ(c.deviations[0].used, "i*Q");
}

TEST(F2, FullCheckLogsExactlyTwoDeviations) {
    const auto r = f2::f2_full_check();
    EXPECT_TRUE(r.report.all_pass()) << failures(r.report);
    ASSERT_EQ(r.deviations.size(), 2u);
    EXPECT_EQ(r.deviations[0].where, "omega pairing (2,2)");
    const auto doc = f2::encode_f2_report(r);
    EXPECT_TRUE(doc["all_pass"].get<bool>());
    EXPECT_EQ(doc["checks"].size(), r.report.checks.size());
}

TEST(F2, BasisNames) {
    for (auto b : {F2Basis::Triangle, F2Basis::Omega, F2Basis::Flat, F2Basis::Can, F2Basis::CanR})
        EXPECT_EQ(f2::parse_f2_basis(f2::f2_basis_name(b)), b);
    EXPECT_THROW(f2::parse_f2_basis("square"), Error);
}
