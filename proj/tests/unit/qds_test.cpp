#include "qdskit/core/error.hpp"
#include "qdskit/qds/system.hpp"
#include "qdskit/qds/wps_systems.hpp"

#include <gtest/gtest.h>

using namespace qdskit;
using qds::PolySystem;
using qds::WpsBasis;

namespace {

const std::vector<std::vector<long>> kWeights{{1, 1}, {1, 2}, {1, 1, 1}, {1, 2, 2}, {1, 2, 3}, {1, 1, 1, 1}, {1, 2, 5}};

PolySystem system_for(const std::vector<long>& w, WpsBasis b) { return qds::build_wps_system(wps::build_weight_data(w), b); }

std::string failures(const Report& rep) {
    std::string s;
    for (const auto* f : rep.failures()) s += f->name + "; ";
    return s;
}

}  // namespace

TEST(WpsSystems, FlatAndMetricInBothBases) {
    for (const auto& w : kWeights)
        for (auto b : {WpsBasis::Omega, WpsBasis::RescaledFlat}) {
            const auto sys = system_for(w, b);
            const Report integ = qds::check_integrability(sys);
            const Report pair = qds::check_pairing(sys);
            EXPECT_TRUE(integ.all_pass()) << sys.label << ": " << failures(integ);
            EXPECT_TRUE(pair.all_pass()) << sys.label << ": " << failures(pair);
        }
}

TEST(WpsSystems, RescaledFlatBasisIsFlat) {
    for (const auto& w : kWeights) EXPECT_TRUE(system_for(w, WpsBasis::RescaledFlat).is_flat());
}

TEST(WpsSystems, SmallOrbifoldProductMatrix) {
    // M₁(ζ) = −2·[[0,0,ζ/4],[1,0,0],[0,ζ,0]] in the rescaled flat basis.
    const auto sys = system_for({1, 2}, WpsBasis::RescaledFlat);
    const QPoly z = QPoly::var(0), o(0), one(1);
    const Matrix<QPoly> expected = QPoly(Rational(-2)) * Matrix<QPoly>{{o, o, QPoly(Rational(1, 4)) * z}, {one, o, o}, {o, z, o}};
    EXPECT_EQ(sys.M1(0), expected);
    EXPECT_EQ(sys.A_inf(), (Matrix<QPoly>::diagonal({o, one, QPoly(Rational(1, 2))})));
}

TEST(WpsSystems, ProjectiveSpaceQuantumProduct) {
    for (int n = 1; n <= 3; ++n) {
        const auto sys = qds::build_projective_space(n);
        const auto table = qds::quantum_product(sys, 0);
        EXPECT_TRUE(qds::check_product(table, sys.g).all_pass());
        // ω₁^{*(n+1)} = x·ω₀.
        Matrix<QPoly> p = Matrix<QPoly>::identity(n + 1);
        for (int k = 0; k <= n; ++k) p = table.ops[1] * p;
        EXPECT_EQ(p, QPoly::var(0) * Matrix<QPoly>::identity(n + 1));
    }
}

TEST(WpsSystems, PrimitiveSectionAtGenericPoint) {
    for (const auto& w : kWeights) {
        const auto sys = system_for(w, WpsBasis::Omega);
        EXPECT_TRUE(qds::is_pre_primitive(sys, {Rational(1)}, 0));
    }
    // At x = 0 the cyclic structure breaks for weights other than (1, 1, ...).
    EXPECT_FALSE(qds::is_pre_primitive(system_for({1, 2}, WpsBasis::Omega), {Rational(0)}, 2));
}

TEST(WpsSystems, PerturbedEntryBreaksFlatness) {
    auto sys = system_for({1, 2, 3}, WpsBasis::RescaledFlat);
    sys.coord_matrices[0](1, 0) += QPoly::var(sys.tau) * QPoly(Rational(1, 7));
    EXPECT_FALSE(qds::check_integrability(sys).all_pass());
}

TEST(WpsSystems, PerturbedPairingBreaksMetricRelations) {
    auto sys = system_for({1, 2}, WpsBasis::RescaledFlat);
    sys.g(0, 0) = QPoly(1);
    EXPECT_FALSE(qds::check_pairing(sys).all_pass());
}

TEST(QdsJson, RoundTrip) {
    for (const auto& w : kWeights) {
        const auto sys = system_for(w, WpsBasis::Omega);
        const auto back = qds::decode_system(qds::encode_system(sys));
        EXPECT_EQ(back.coord_matrices[0], sys.coord_matrices[0]);
        EXPECT_EQ(back.tau_matrix, sys.tau_matrix);
        EXPECT_EQ(back.g, sys.g);
        EXPECT_EQ(back.names, sys.names);
        EXPECT_EQ(*back.degrees, *sys.degrees);
    }
}

TEST(QdsJson, MalformedInputs) {
    auto doc = qds::encode_system(system_for({1, 2}, WpsBasis::Omega));
    auto code = [](const json::Json& j) {
        try {
            qds::decode_system(j);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::NotFlat;
    };
    auto missing = doc;
    missing.erase("pairing");
    EXPECT_EQ(code(missing), ErrorCode::ParseError);
    auto unknown = doc;
    unknown["tau"] = "t";
    EXPECT_EQ(code(unknown), ErrorCode::UnknownVariable);
    auto wrong = doc;
    wrong["rank"] = 4;
    EXPECT_EQ(code(wrong), ErrorCode::DimensionMismatch);
}

TEST(QdsSystem, SingularPairingIsRejected) {
    auto sys = system_for({1, 1}, WpsBasis::Omega);
    sys.g = Matrix<QPoly>(2, 2);
    EXPECT_THROW(qds::check_pairing(sys), Error);
}
