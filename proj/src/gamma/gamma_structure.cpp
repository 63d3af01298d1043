#include "qdskit/gamma/gamma_structure.hpp"

#include "qdskit/core/error.hpp"
#include "qdskit/gamma/special.hpp"

#include <cmath>
#include <sstream>

namespace qdskit::gamma {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kTwoPiI(0.0, 2.0 * kPi);

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// The constant 1, exact through t^{top}.
LaurentSeries unit_series(int top) {
    LaurentSeries one{0, std::vector<double>(idx(std::max(top, 0) + 1), 0.0)};
    one.coeffs[0] = 1.0;
    return one;
}

// 1 − {x} with {x} = ⌈x⌉ − x, as an exact rational in (0, 1].
Rational one_minus_frac(const Rational& x) { return Rational(1) + x - Rational(x.ceil()); }

// Coefficients of Σ_m (−2iπℓ)ᵐ/m! pᵐ ∪ (series in p) truncated to d terms.
std::vector<Complex> twist(const std::vector<double>& coeffs, int ell) {
    const std::size_t d = coeffs.size();
    std::vector<Complex> e(d);
    Complex term(1.0, 0.0);
    for (std::size_t m = 0; m < d; ++m) {
        e[m] = term;
        term *= -kTwoPiI * static_cast<double>(ell) / static_cast<double>(m + 1);
    }
    std::vector<Complex> out(d, Complex(0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 0; m <= i; ++m) out[i] += e[m] * coeffs[i - m];
    return out;
}

Complex phase(const Rational& f, int ell) { return std::polar(1.0, 2.0 * kPi * ell * f.to_double()); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

}  // namespace

BlockValues psi_constants(const wps::WeightData& wd) {
    BlockValues out(idx(wd.k() + 1));
    for (int j = 0; j <= wd.k(); ++j) {
        const int d = wd.d[idx(j)];
        // G_j(t), t = r·s; every factor is kept through t^{d} so that the
        // product is exact through t^{−1}.
        LaurentSeries g = unit_series(d);
        int poles = 0;
        auto multiply = [&](const Rational& w, const Rational& e) {
            if (e.is_zero()) ++poles;
            g = g.times(gamma_factor(w, e, d), -1 + d);
        };
        if (j == 0) {
            for (long w : wd.weights) multiply(Rational(w), Rational(0));
            g = g.scaled(wd.w_prod.to_double());
        } else {
            const Rational& f = wd.f[idx(j)];
            const auto& a = wd.a[idx(wd.a_index(j))];
            multiply(Rational(1), f);
            for (int m = 1; m <= wd.n; ++m) {
                const Rational w(wd.weights[idx(m)]);
                multiply(w, w * (f - Rational(1)) + Rational(a[idx(m)]));
            }
            g = g.scaled(wd.b[idx(j)].to_double());
        }
        if (poles != d) throw Error(ErrorCode::DimensionMismatch, "pole order differs from the block size");
        auto& block = out[idx(j)];
        for (int i = 1; i <= d; ++i) block.push_back(g.at(i - 1 - d));
    }
    return out;
}

Complex psi_component(const wps::WeightData& wd, const BlockValues& constants, int j, int i, int ell) {
    const auto& block = constants[idx(j)];
    std::vector<double> head(block.begin(), block.begin() + i);
    return phase(wd.f[idx(j)], ell) * twist(head, ell)[idx(i - 1)];
}

std::vector<Eigen::VectorXcd> psi_vectors(const wps::WeightData& wd, const BlockValues& constants) {
    std::vector<Eigen::VectorXcd> out;
    for (int ell = 0; ell < wd.mu; ++ell) {
        Eigen::VectorXcd v(wd.mu);
        for (int j = 0; j <= wd.k(); ++j) {
            const auto tw = twist(constants[idx(j)], ell);
            const Complex ph = phase(wd.f[idx(j)], ell);
            for (int i = 0; i < wd.d[idx(j)]; ++i) v(wd.block_start(j) + i) = ph * tw[idx(i)];
        }
        out.push_back(v);
    }
    return out;
}

BlockValues gamma_hat_classes(const wps::WeightData& wd, bool include_r) {
    BlockValues out;
    for (int j = 0; j <= wd.k(); ++j) {
        const int d = wd.d[idx(j)];
        LaurentSeries prod = unit_series(d - 1);
        for (long wl : wd.weights) {
            Rational w(wl);
            if (include_r) w = w * wd.r;
            // Γ(w·p + b) = Σ_k γ_k (w·p)ᵏ with b = 1 − {w_m f_j}.
            LaurentSeries s = gamma_series(one_minus_frac(Rational(wl) * wd.f[idx(j)]), d - 1);
            double pw = 1.0;
            for (auto& c : s.coeffs) {
                c *= pw;
                pw *= w.to_double();
            }
            prod = prod.times(s, d - 1);
        }
        out.push_back(prod.coeffs);
    }
    return out;
}

std::vector<Eigen::VectorXcd> gamma_hat_route(const wps::WeightData& wd, bool include_r) {
    const BlockValues hat = gamma_hat_classes(wd, include_r);
    std::vector<Eigen::VectorXcd> out;
    for (int ell = 0; ell < wd.mu; ++ell) {
        Eigen::VectorXcd v(wd.mu);
        for (int j = 0; j <= wd.k(); ++j) {
            const auto tw = twist(hat[idx(j)], ell);
            const Complex scale = phase(wd.f[idx(j)], ell) / wd.s[idx(j)].to_double();
            for (int i = 0; i < wd.d[idx(j)]; ++i) v(wd.block_start(j) + i) = scale * tw[idx(i)];
        }
        out.push_back(v);
    }
    return out;
}

double leading_constant_closed_form(const wps::WeightData& wd, int j) {
    if (j == 0) return 1.0;
    double v = wd.b[idx(j)].to_double();
    for (int m : wd.C[idx(j)]) v /= static_cast<double>(wd.weights[idx(m)]);
    for (long w : wd.weights) v *= gamma_fn(one_minus_frac(Rational(w) * wd.f[idx(j)]).to_double());
    return v;
}

Eigen::MatrixXcd conjugation(const std::vector<Eigen::VectorXcd>& vectors) {
    const int mu = static_cast<int>(vectors.size());
    Eigen::MatrixXcd V(mu, mu);
    for (int l = 0; l < mu; ++l) V.col(l) = vectors[idx(l)];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const auto& sv = svd.singularValues();
    if (mu == 0 || sv(mu - 1) <= 1e-12 * sv(0))
        throw Error(ErrorCode::VectorsDoNotSpan, "the generating vectors are numerically dependent");
    const Eigen::MatrixXcd Vbar = V.conjugate();
    // C·conj(V) = V.
    return Vbar.transpose().partialPivLu().solve(V.transpose()).transpose();
}

GammaStructure build_gamma_structure(const wps::WeightData& wd) {
    GammaStructure gs;
    gs.wd = wd;
    gs.constants = psi_constants(wd);
    gs.vectors = psi_vectors(wd, gs.constants);
    gs.gamma_hat = gamma_hat_classes(wd);
    gs.conjugation = conjugation(gs.vectors);
    return gs;
}

Eigen::VectorXcd conjugate_basis_vector(const GammaStructure& gs, int slot) { return gs.conjugation.col(slot); }

Eigen::VectorXcd gamma_hat_cup(const GammaStructure& gs, int j, int m) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(gs.wd.mu);
    const auto& hat = gs.gamma_hat[idx(j)];
    const double inv_s = 1.0 / gs.wd.s[idx(j)].to_double();
    for (int i = m; i < gs.wd.d[idx(j)]; ++i) v(gs.wd.block_start(j) + i) = inv_s * hat[idx(i - m)];
    return v;
}

Report check_conjugation(const GammaStructure& gs, double tol) {
    Report rep;
    const auto& wd = gs.wd;
    const Eigen::MatrixXcd& C = gs.conjugation;
    // Deviations are relative to the size of the data they are built from.
    const double c_scale = std::max(1.0, C.cwiseAbs().maxCoeff());
    const double inv_err =
        (C * C.conjugate() - Eigen::MatrixXcd::Identity(wd.mu, wd.mu)).cwiseAbs().maxCoeff() / (c_scale * c_scale);
    rep.add("conjugation is an involution", inv_err <= tol, "relative |C conj(C) - I| = " + fmt(inv_err));

    double block_err = 0.0, cup_err = 0.0;
    for (int j = 0; j <= wd.k(); ++j) {
        const int cj = wd.pair[idx(j)];
        const int d = wd.d[idx(j)];
        for (int m = 0; m < d; ++m) {
            Eigen::VectorXcd lhs = Eigen::VectorXcd::Zero(wd.mu), rhs = Eigen::VectorXcd::Zero(wd.mu);
            const double sign = m % 2 == 0 ? 1.0 : -1.0;
            for (int i = 1; i - 1 + m <= d - 1; ++i) {
                lhs += gs.constants[idx(j)][idx(i - 1)] * C.col(wd.block_start(j) + i - 1 + m);
                rhs(wd.block_start(cj) + i - 1 + m) += sign * gs.constants[idx(cj)][idx(i - 1)];
            }
            const double scale = c_scale * std::max(1.0, std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()));
            block_err = std::max(block_err, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
            const Eigen::VectorXcd u = gamma_hat_cup(gs, j, m);
            const Eigen::VectorXcd image = C * u.conjugate();
            const double u_scale = c_scale * std::max(1.0, u.cwiseAbs().maxCoeff());
            cup_err = std::max(cup_err, (image - sign * gamma_hat_cup(gs, cj, m)).cwiseAbs().maxCoeff() / u_scale);
        }
    }
    rep.add("conjugate Jordan blocks relation", block_err <= tol, "relative deviation " + fmt(block_err));
    rep.add("conjugation of gamma-hat cup classes", cup_err <= tol, "relative deviation " + fmt(cup_err));
    return rep;
}

double relative_difference(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector families of different sizes");
    double err = 0.0, scale = 1.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        err = std::max(err, (a[l] - b[l]).cwiseAbs().maxCoeff());
        scale = std::max(scale, a[l].cwiseAbs().maxCoeff());
    }
    return err / scale;
}

Report check_gamma_structure(const GammaStructure& gs, double tol) {
    Report rep;
    const auto& wd = gs.wd;
    const double lead0 = gs.constants[0][0];
    rep.add("leading constant of block 0 is 1", std::abs(lead0 - 1.0) <= tol, fmt(lead0));

    double min_lead = INFINITY;
    for (int j = 0; j <= wd.k(); ++j)
        for (int ell = 0; ell < wd.mu; ++ell)
            min_lead = std::min(min_lead, std::abs(gs.vectors[idx(ell)](wd.block_start(j))));
    rep.add("leading constants do not vanish", min_lead > tol, "min |Psi_1| = " + fmt(min_lead));

    double closed = 0.0;
    for (int j = 0; j <= wd.k(); ++j) {
        const double want = leading_constant_closed_form(wd, j);
        closed = std::max(closed, std::abs(gs.constants[idx(j)][0] - want) / std::max(1.0, std::abs(want)));
    }
    rep.add("closed formula for leading constants", closed <= tol, "max relative deviation " + fmt(closed));

    const double routes = relative_difference(gs.vectors, gamma_hat_route(wd));
    rep.add("Mellin and gamma-hat routes agree", routes <= tol, "relative deviation " + fmt(routes));

    rep.append(check_conjugation(gs, tol));
    return rep;
}

Report check_projective_span(const GammaStructure& gs, double tol) {
    Report rep;
    const auto& wd = gs.wd;
    for (long w : wd.weights)
        if (w != 1) throw Error(ErrorCode::DimensionMismatch, "projective span check needs weights all equal to 1");
    const int mu = wd.mu;
    // Γ(1 + p)^{n+1} from the gamma series directly.
    LaurentSeries g1 = gamma_series(Rational(1), mu - 1), pw = unit_series(mu - 1);
    for (int m = 0; m < mu; ++m) pw = pw.times(g1, mu - 1);
    double hat_err = 0.0;
    for (int i = 0; i < mu; ++i) hat_err = std::max(hat_err, std::abs(pw.coeffs[idx(i)] - gs.gamma_hat[0][idx(i)]));
    rep.add("gamma-hat class is Gamma(1+p)^(n+1)", hat_err <= tol, "max deviation " + fmt(hat_err));

    // Solve Ψ_ℓ = Σ_m c_m Γ̂₀ ∪ (2iπp)ᵐ by forward substitution; expect c_m = (−ℓ)ᵐ/m!.
    double coeff_err = 0.0;
    for (int ell = 0; ell < mu; ++ell) {
        std::vector<Complex> c(idx(mu));
        for (int i = 0; i < mu; ++i) {
            Complex acc = gs.vectors[idx(ell)](i);
            for (int m = 0; m < i; ++m) acc -= c[idx(m)] * std::pow(kTwoPiI, m) * gs.gamma_hat[0][idx(i - m)];
            c[idx(i)] = acc / (std::pow(kTwoPiI, i) * gs.gamma_hat[0][0]);
        }
        double want = 1.0;
        for (int m = 0; m < mu; ++m) {
            coeff_err = std::max(coeff_err, std::abs(c[idx(m)] - Complex(want, 0.0)));
            want *= -static_cast<double>(ell) / (m + 1);
        }
    }
    rep.add("rational span is gamma-hat cup delta(H*)", coeff_err <= tol, "max deviation " + fmt(coeff_err));
    return rep;
}

json::Json encode_gamma_structure(const GammaStructure& gs) {
    const auto& wd = gs.wd;
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "GammaStructure";
    j["weights"] = wd.weights;
    json::Json blocks = json::Json::array();
    for (int b = 0; b <= wd.k(); ++b) {
        json::Json e;
        e["block"] = b;
        e["f"] = wd.f[idx(b)].str();
        e["size"] = wd.d[idx(b)];
        e["first_slot"] = wd.block_start(b);
        e["conjugate_block"] = wd.pair[idx(b)];
        e["psi_constants"] = gs.constants[idx(b)];
        e["gamma_hat"] = gs.gamma_hat[idx(b)];
        blocks.push_back(e);
    }
    j["blocks"] = blocks;
    json::Json vecs = json::Json::array();
    for (const auto& v : gs.vectors) {
        json::Json col = json::Json::array();
        for (int i = 0; i < v.size(); ++i) col.push_back(json::encode(v(i)));
        vecs.push_back(col);
    }
    j["vectors"] = vecs;
    json::Json cm = json::Json::array();
    for (int r = 0; r < gs.conjugation.rows(); ++r) {
        json::Json row = json::Json::array();
        for (int c = 0; c < gs.conjugation.cols(); ++c) row.push_back(json::encode(gs.conjugation(r, c)));
        cm.push_back(row);
    }
    j["conjugation"] = cm;
    return j;
}

}  // namespace qdskit::gamma
