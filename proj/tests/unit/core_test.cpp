#include "qdskit/core/error.hpp"
#include "qdskit/core/gaussian.hpp"
#include "qdskit/core/json_io.hpp"
#include "qdskit/core/local_frac.hpp"
#include "qdskit/core/matrix.hpp"
#include "qdskit/core/poly.hpp"
#include "qdskit/core/rational.hpp"
#include "qdskit/core/ring.hpp"
#include "qdskit/core/series.hpp"
#include "qdskit/core/sqrt_ext.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qdskit;

namespace {

// Random Laurent polynomials in two variables with small coefficients.
QPoly random_poly(std::mt19937& rng, int terms = 4, int lo = 0, int hi = 3) {
    std::uniform_int_distribution<int> e(lo, hi), c(-5, 5), den(1, 3);
    QPoly p;
    for (int k = 0; k < terms; ++k) p += QPoly(Monomial({e(rng), e(rng)}), Rational(c(rng), den(rng)));
    return p;
}

Matrix<Rational> random_matrix(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> c(-4, 4);
    Matrix<Rational> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rational(c(rng));
    return m;
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::ParseError;
}

}  // namespace

TEST(Rational, CanonicalFormAndPrinting) {
    EXPECT_EQ(Rational(6, -4).str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational(7, 2).floor_long(), 3);
    EXPECT_EQ(Rational(-7, 2).floor_long(), -4);
    EXPECT_EQ(Rational(-7, 2).ceil_long(), -3);
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
}

TEST(Rational, DivisionByZeroIsAnError) {
    EXPECT_EQ(code_of([] { (void)(Rational(1) / Rational(0)); }), ErrorCode::DivisionByNonUnit);
    EXPECT_EQ(code_of([] { (void)Rational::parse("1/x"); }), ErrorCode::ParseError);
}

TEST(Gaussian, FieldOperations) {
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(i * i, GaussianRational(-1));
    const GaussianRational z(Rational(1, 2), Rational(3));
    EXPECT_EQ(z * (GaussianRational(1) / z), GaussianRational(1));
    EXPECT_EQ(z.conj().im(), Rational(-3));
    EXPECT_FALSE(try_inverse(GaussianRational(0)).has_value());
}

TEST(Poly, ArithmeticAndDerivatives) {
    const QPoly x = QPoly::var(0), y = QPoly::var(1);
    const QPoly p = x * x * y + QPoly(Rational(3)) * y;
    EXPECT_EQ(p.diff(0), QPoly(Rational(2)) * x * y);
    EXPECT_EQ(p.log_diff(1), p);
    EXPECT_EQ(p.coeff(0, 2), y);
    EXPECT_EQ(p.evaluated(1, Rational(2)), QPoly(Rational(2)) * x * x + QPoly(Rational(6)));
    EXPECT_EQ(to_string(p, {"x", "y"}), "x^2*y + 3*y");
    const QPoly inv = QPoly::var(0, -1);
    EXPECT_EQ(inv * x, QPoly(1));
    EXPECT_FALSE((x + QPoly(1)).inverse().has_value());
}

TEST(Poly, ExactDivision) {
    const QPoly x = QPoly::var(0), one(1);
    const QPoly a = (x + one) * (x - one);
    auto q = QPoly::divide_exact(a, x + one);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, x - one);
    EXPECT_FALSE(QPoly::divide_exact(a, x + QPoly(2)).has_value());
}

TEST(PolyProperty, RingAxiomsAndLeibniz) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const QPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng, 3, -2, 2);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ((a * b).diff(0), a.diff(0) * b + a * b.diff(0));
        EXPECT_EQ((a * c).log_diff(1), a.log_diff(1) * c + a * c.log_diff(1));
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(MatrixProperty, InverseOfRandomRationalMatrices) {
    std::mt19937 rng(11);
    int invertible = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = random_matrix(rng, 4);
        auto inv = m.try_inverse();
        if (is_zero(m.determinant())) {
            EXPECT_FALSE(inv.has_value());
            continue;
        }
        ASSERT_TRUE(inv.has_value());
        EXPECT_EQ(m * *inv, Matrix<Rational>::identity(4));
        EXPECT_EQ(*inv * m, Matrix<Rational>::identity(4));
        ++invertible;
    }
    EXPECT_GT(invertible, 50);
}

TEST(MatrixProperty, DeterminantIsMultiplicative) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_matrix(rng, 3), b = random_matrix(rng, 3);
        EXPECT_EQ((a * b).determinant(), a.determinant() * b.determinant());
        EXPECT_EQ(a.transpose().determinant(), a.determinant());
    }
}

TEST(Matrix, PolynomialInverseNeedsUnitDeterminant) {
    const QPoly x = QPoly::var(0), o(0), one(1);
    const Matrix<QPoly> unimodular{{one, x}, {o, one}};
    EXPECT_EQ(unimodular.inverse(), (Matrix<QPoly>{{one, -x}, {o, one}}));
    const Matrix<QPoly> singular{{one + x, o}, {o, one}};
    EXPECT_FALSE(singular.try_inverse().has_value());
    EXPECT_EQ(code_of([&] { (void)(unimodular * Matrix<QPoly>(3, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(Matrix, RankOverRationals) {
    const Matrix<Rational> m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    EXPECT_EQ(rank(m), 2);
    EXPECT_EQ(rank(Matrix<Rational>::identity(5)), 5);
}

TEST(Series, InverseOfUnitSeries) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        TruncatedSeries<Rational> h(6, Rational(0));
        h[0] = Rational(1 + std::abs(c(rng)));
        for (int k = 1; k < 6; ++k) h[k] = Rational(c(rng), 1 + std::abs(c(rng)));
        TruncatedSeries<Rational> one(6, Rational(0));
        one[0] = Rational(1);
        EXPECT_EQ(h * series_invert(h), one);
    }
}

TEST(Series, MatrixCoefficientsAndNonUnit) {
    TruncatedSeries<Matrix<Rational>> h(4, Matrix<Rational>(2, 2));
    h[0] = Matrix<Rational>::identity(2);
    h[1] = Matrix<Rational>{{0, 1}, {1, 0}};
    h[3] = Matrix<Rational>{{2, 0}, {0, 5}};
    auto b = series_invert(h);
    auto p = h * b;
    EXPECT_EQ(p[0], Matrix<Rational>::identity(2));
    for (int k = 1; k < 4; ++k) EXPECT_TRUE(p[k].is_zero_matrix());
    TruncatedSeries<Rational> bad(3, Rational(0));
    bad[1] = Rational(1);
    EXPECT_EQ(code_of([&] { (void)series_invert(bad); }), ErrorCode::NonUnitConstantTerm);
}

TEST(LocalFrac, ReducedFormsCompareStructurally) {
    const QPoly x = QPoly::var(0), one(1);
    auto ctx = std::make_shared<const LocalContext<Rational>>(LocalContext<Rational>{{x - one}, {"x"}});
    const QFrac a(ctx, x * x - one, {1});  // (x² − 1)/(x − 1) = x + 1
    EXPECT_TRUE(a.is_polynomial());
    EXPECT_EQ(a, QFrac(ctx, x + one));
    const QFrac u(ctx, x - one);
    auto inv = u.inverse();
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(u * *inv, QFrac(ctx, one));
    EXPECT_FALSE(QFrac(ctx, x + one).inverse().has_value());
}

TEST(LocalFracProperty, QuotientRule) {
    const QPoly x = QPoly::var(0), y = QPoly::var(1), one(1);
    auto ctx = std::make_shared<const LocalContext<Rational>>(
        LocalContext<Rational>{{QPoly(Rational(4)) * x - one, x + one}, {"x", "y"}});
    std::mt19937 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        const QFrac a(ctx, random_poly(rng), {trial % 3, 0});
        const QFrac b(ctx, random_poly(rng, 2), {0, trial % 2});
        EXPECT_EQ((a * b).diff(0), a.diff(0) * b + a * b.diff(0));
        EXPECT_EQ((a + b).log_diff(1), a.log_diff(1) + b.log_diff(1));
    }
    (void)y;
}

TEST(SqrtExt, SquareRootRelationAndDerivative) {
    const QPoly q = QPoly::var(0), one(1);
    auto lctx = std::make_shared<const LocalContext<Rational>>(
        LocalContext<Rational>{{QPoly(Rational(4)) * q - one}, {"q"}});
    using F = LocalFrac<Rational>;
    auto sctx = std::make_shared<const SqrtContext<F>>(SqrtContext<F>{F(lctx, one - QPoly(Rational(4)) * q), "s"});
    using S = SqrtExt<F>;
    const S s = S::generator(sctx);
    EXPECT_EQ(s * s, S(sctx, F(lctx, one - QPoly(Rational(4)) * q), F(lctx, QPoly())));
    // d/dq s = −2/s = −2 s / (1 − 4q).
    const S ds = s.diff(0);
    EXPECT_EQ(ds * s, S(sctx, F(lctx, QPoly(Rational(-2))), F(lctx, QPoly())));
    auto inv = s.inverse();
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(s * *inv, S(sctx, F(lctx, one), F(lctx, QPoly())));
}

TEST(Substitute, HomomorphismIntoGaussianPolynomials) {
    const QPoly x = QPoly::var(0), y = QPoly::var(1);
    const QPoly p = x * x + QPoly(Rational(2)) * x * y;
    const std::vector<GPoly> values{GPoly(GaussianRational::i()), GPoly::var(1)};
    const std::function<GPoly(const Rational&)> lift = [](const Rational& c) { return GPoly(GaussianRational(c)); };
    const GPoly r = substitute<GPoly>(p, values, lift);
    EXPECT_EQ(r, GPoly(GaussianRational(-1)) + GPoly(GaussianRational(Rational(0), Rational(2))) * GPoly::var(1));
}

TEST(Json, RoundTripOfPolynomialMatrices) {
    std::mt19937 rng(23);
    Matrix<QPoly> m(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = random_poly(rng);
    EXPECT_EQ(json::decode_qpoly_matrix(json::encode(m)), m);
    EXPECT_EQ(json::encode(Rational(-3, 6)).get<std::string>(), "-1/2");
    EXPECT_EQ(json::decode_rational(json::Json("5/10")), Rational(1, 2));
    EXPECT_EQ(code_of([] { (void)json::decode_rational(json::Json(1.5)); }), ErrorCode::ParseError);
}
