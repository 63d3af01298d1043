#include "qdskit/core/error.hpp"
#include "qdskit/gamma/gamma_structure.hpp"
#include "qdskit/gamma/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qdskit;
using Weights = std::vector<long>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.5772156649015329;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Special, GammaClosedForms) {
    EXPECT_NEAR(gamma::gamma_fn(0.5), std::sqrt(kPi), 1e-14);
    double fact = 1.0;
    for (int n = 1; n <= 12; ++n) {
        EXPECT_NEAR(gamma::gamma_fn(n) / fact, 1.0, 1e-13);
        fact *= n;
    }
    // Reflection Γ(x)Γ(1 − x) = π / sin(πx).
    for (double x : {0.1, 0.25, 1.0 / 3.0, 0.7})
        EXPECT_NEAR(gamma::gamma_fn(x) * gamma::gamma_fn(1 - x), kPi / std::sin(kPi * x), 1e-12);
}

TEST(Special, DigammaValues) {
    EXPECT_NEAR(gamma::digamma(1.0), -kEuler, 1e-12);
    EXPECT_NEAR(gamma::digamma(0.5), -kEuler - 2 * std::log(2.0), 1e-12);
    EXPECT_NEAR(gamma::euler_gamma_constant(), kEuler, 1e-15);
}

TEST(SpecialProperty, DigammaRecurrenceAndDerivative) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        EXPECT_NEAR(gamma::digamma(x + 1) - gamma::digamma(x), 1 / x, 1e-10);
        const double h = 1e-5;
        const double slope = (std::lgamma(x + h) - std::lgamma(x - h)) / (2 * h);
        EXPECT_NEAR(gamma::digamma(x), slope, 1e-6 * std::max(1.0, std::abs(slope)));
    }
}

TEST(Special, HurwitzZetaValues) {
    EXPECT_NEAR(gamma::hurwitz_zeta(2, 1.0), kPi * kPi / 6, 1e-12);
    EXPECT_NEAR(gamma::hurwitz_zeta(2, 0.5), kPi * kPi / 2, 1e-12);
    EXPECT_NEAR(gamma::hurwitz_zeta(4, 1.0), std::pow(kPi, 4) / 90, 1e-12);
    EXPECT_NEAR(gamma::hurwitz_zeta(3, 2.0), 1.2020569031595942 - 1.0, 1e-12);
}

TEST(Special, GammaSeriesReproducesNearbyValues) {
    for (const Rational& b : {Rational(1), Rational(1, 3), Rational(5, 2)}) {
        const auto s = gamma::gamma_series(b, 12);
        const double x = 0.05;
        double sum = 0.0;
        for (int k = 0; k <= 12; ++k) sum += s.at(k) * std::pow(x, k);
        EXPECT_NEAR(sum / std::tgamma(b.to_double() + x), 1.0, 1e-9);
    }
}

TEST(Special, GammaFactorPole) {
    // Γ(2t) = 1/(2t) − γ + O(t).
    const auto s = gamma::gamma_factor(Rational(2), Rational(0), 1);
    EXPECT_EQ(s.lead, -1);
    EXPECT_NEAR(s.at(-1), 0.5, 1e-15);
    EXPECT_NEAR(s.at(0), -kEuler, 1e-12);
    EXPECT_THROW(s.at(5), Error);
}

TEST(Special, DomainErrors) {
    EXPECT_THROW(gamma::gamma_fn(0.0), Error);
    EXPECT_THROW(gamma::digamma(-1.0), Error);
    EXPECT_THROW(gamma::hurwitz_zeta(1, 1.0), Error);
    EXPECT_THROW(gamma::gamma_factor(Rational(1), Rational(-1), 2), Error);
}

TEST(GammaStructure, LeadingConstantsMatchClosedForm) {
    for (const Weights& w : std::vector<Weights>{{1, 1}, {1, 2}, {1, 2, 2}, {1, 2, 3}, {1, 2, 5}, {1, 3, 4, 6}}) {
        const auto wd = wps::build_weight_data(w);
        const auto c = gamma::psi_constants(wd);
        ASSERT_EQ(static_cast<int>(c.size()), wd.k() + 1);
        EXPECT_DOUBLE_EQ(c[0][0], 1.0);
        for (int j = 0; j <= wd.k(); ++j)
            EXPECT_NEAR(c[static_cast<std::size_t>(j)][0] / gamma::leading_constant_closed_form(wd, j), 1.0, 1e-10);
    }
}

TEST(GammaStructure, ProjectiveLineConstant) {
    // Γ(1 + p)² = 1 − 2γp mod p².
    const auto c = gamma::psi_constants(wps::build_weight_data({1, 1}));
    EXPECT_NEAR(c[0][1], -2 * kEuler, 1e-12);
    const auto g = gamma::gamma_hat_classes(wps::build_weight_data({1, 1}));
    EXPECT_NEAR(g[0][1], -2 * kEuler, 1e-12);
}

TEST(GammaStructure, AllChecksPass) {
    for (const Weights& w : std::vector<Weights>{{1, 1}, {1, 2}, {1, 1, 1}, {1, 2, 2}, {1, 2, 3}, {1, 2, 5}}) {
        const auto gs = gamma::build_gamma_structure(wps::build_weight_data(w));
        EXPECT_TRUE(gamma::check_gamma_structure(gs, 1e-9).all_pass());
        const auto& C = gs.conjugation;
        EXPECT_LT(max_abs(C * C.conjugate() - Eigen::MatrixXcd::Identity(C.rows(), C.cols())), 1e-9);
    }
}

TEST(GammaStructure, ScaledArgumentBreaksAgreement) {
    // Γ(r·w·p + …) instead of Γ(w·p + …) only matches when r = 1.
    const auto wd = wps::build_weight_data({1, 2});
    const auto a = gamma::psi_vectors(wd, gamma::psi_constants(wd));
    EXPECT_LT(gamma::relative_difference(a, gamma::gamma_hat_route(wd, false)), 1e-9);
    EXPECT_GT(gamma::relative_difference(a, gamma::gamma_hat_route(wd, true)), 1e-3);
    const auto p1 = wps::build_weight_data({1, 1});
    EXPECT_LT(gamma::relative_difference(gamma::psi_vectors(p1, gamma::psi_constants(p1)), gamma::gamma_hat_route(p1, true)), 1e-9);
}

TEST(GammaStructure, ProjectiveSpan) {
    for (int n = 1; n <= 3; ++n) {
        const auto gs = gamma::build_gamma_structure(wps::build_weight_data(Weights(static_cast<std::size_t>(n) + 1, 1)));
        EXPECT_TRUE(gamma::check_projective_span(gs, 1e-9).all_pass());
    }
    EXPECT_THROW(gamma::check_projective_span(gamma::build_gamma_structure(wps::build_weight_data({1, 2})), 1e-9), Error);
}

TEST(GammaStructure, DependentVectorsAreRejected) {
    Eigen::VectorXcd v(2);
    v << 1.0, 2.0;
    try {
        gamma::conjugation({v, v});
        FAIL() << "dependent vectors accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::VectorsDoNotSpan);
    }
}

TEST(GammaStructure, JsonRecord) {
    const auto j = gamma::encode_gamma_structure(gamma::build_gamma_structure(wps::build_weight_data({1, 2})));
    EXPECT_EQ(j["schema"], "qds-kit/1");
}
