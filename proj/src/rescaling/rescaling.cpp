#include "qdskit/rescaling/rescaling.hpp"

#include "qdskit/core/error.hpp"

namespace qdskit::rescaling {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void require_size(const RMatrix& m, const Spectrum& alpha) {
    const int mu = static_cast<int>(alpha.size());
    if (m.rows() != mu || m.cols() != mu) throw Error(ErrorCode::DimensionMismatch, "matrix size differs from the spectrum length");
}

}  // namespace

DeligneDecomposition deligne_decompose(const RMatrix& a0, const Spectrum& alpha, int n) {
    require_size(a0, alpha);
    const int mu = a0.rows();
    DeligneDecomposition dec;
    for (const auto& a : alpha) {
        if (a.sign() < 0 || a > Rational(n)) throw Error(ErrorCode::ExponentOutOfRange, "spectral value " + a.str() + " outside [0, n]");
        dec.D.push_back(a.floor_long());
    }
    dec.pieces.assign(idx(n + 2), RMatrix(mu, mu));
    for (int j = 0; j < mu; ++j)
        for (int k = 0; k < mu; ++k) {
            if (a0(j, k).is_zero()) continue;
            const long e = dec.D[idx(k)] - dec.D[idx(j)] + 1;
            if (e < 0 || e > n + 1)
                throw Error(ErrorCode::ExponentOutOfRange,
                            "entry (" + std::to_string(j) + "," + std::to_string(k) + ") has x-exponent " + std::to_string(e));
            dec.pieces[idx(static_cast<int>(e))](j, k) = a0(j, k);
        }
    return dec;
}

Report check_deligne(const DeligneDecomposition& dec, const RMatrix& a0) {
    Report rep;
    const int mu = a0.rows();
    RMatrix sum(mu, mu);
    for (const auto& p : dec.pieces) sum = sum + p;
    rep.add("graded pieces reconstruct the matrix", sum == a0);
    std::vector<Rational> dd;
    for (long d : dec.D) dd.emplace_back(d);
    const RMatrix D = RMatrix::diagonal(dd);
    bool ok = true;
    for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
        const auto& p = dec.pieces[i];
        ok = ok && commutator(D, p) == Rational(-(static_cast<long>(i) - 1)) * p;
    }
    rep.add("[D, A_i] = -(i-1) A_i", ok);
    return rep;
}

RMatrix psi_limit(const RMatrix& a0, const Spectrum& alpha) {
    require_size(a0, alpha);
    const int mu = a0.rows();
    RMatrix out(mu, mu);
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            if (alpha[idx(i)] == alpha[idx(j)] + Rational(1)) out(i, j) = a0(i, j);
    return out;
}

RMatrix limit_pairing(const RMatrix& s, const Spectrum& alpha, int n) {
    require_size(s, alpha);
    const int mu = s.rows();
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            if (!s(i, j).is_zero() && alpha[idx(i)] + alpha[idx(j)] != Rational(n))
                throw Error(ErrorCode::DegeneratePairing, "pairing supported off alpha_i + alpha_j = n");
    if (rank(s) != mu) throw Error(ErrorCode::DegeneratePairing, "pairing is singular");
    return s;
}

DualityVerdict check_limit_duality(const RMatrix& m, const RMatrix& s, const Spectrum& alpha, int n) {
    require_size(m, alpha);
    const RMatrix S = limit_pairing(s, alpha, n);
    // S(m e_a, e_b) = (mᵀS)_{ab} and S(e_a, m e_b) = (S m)_{ab}.
    const RMatrix left = m.transpose() * S;
    const RMatrix right = S * m;
    DualityVerdict v;
    for (int a = 0; a < m.rows() && v.self_adjoint; ++a)
        for (int b = 0; b < m.cols(); ++b)
            if (left(a, b) != right(a, b)) {
                v.self_adjoint = false;
                v.witness = DualityWitness{a, b, left(a, b), right(a, b)};
                break;
            }
    return v;
}

RescalingData build_rescaling_data(const wps::WeightData& wd) {
    RescalingData data;
    data.wd = wd;
    data.alpha = wd.alpha;
    const auto omega = qds::build_wps_system(wd, qds::WpsBasis::Omega);
    data.a0 = qds::evaluate_constant(omega.A0(), omega, {Rational(1)});
    const auto flat = qds::build_wps_system(wd, qds::WpsBasis::RescaledFlat);
    data.pairing = Rational(wd.w_prod) * qds::evaluate_constant(flat.g, flat, {Rational(0)});
    data.deligne = deligne_decompose(data.a0, data.alpha, wd.n);
    data.limit = psi_limit(data.a0, data.alpha);
    return data;
}

Report check_classical_limit(const qds::PolySystem& flat) {
    Report rep;
    if (!flat.is_flat()) throw Error(ErrorCode::NotFlat, "classical limit needs a flat logarithmic system");
    const std::vector<Rational> origin(idx(flat.coord_count()), Rational(0));
    const RMatrix a0 = qds::evaluate_constant(flat.A0(), flat, origin);
    const RMatrix ainf = qds::evaluate_constant(flat.A_inf(), flat, origin);
    const RMatrix g = qds::evaluate_constant(flat.g, flat, origin);
    const Rational n(flat.weight);
    rep.add("limit pairing symmetric", g.transpose() == g);
    rep.add("limit A_inf adjoint relation", ainf.transpose() * g + g * ainf == n * g);
    rep.add("limit A0 self-adjoint", a0.transpose() * g == g * a0);
    rep.add("[A_inf, A0(0)] = A0(0)", commutator(ainf, a0) == a0);
    bool twist = true;
    for (int i = 0; i < a0.rows(); ++i)
        for (int j = 0; j < a0.cols(); ++j)
            if (!a0(i, j).is_zero() && ainf(i, i).floor_long() != ainf(j, j).floor_long() + 1) twist = false;
    rep.add("theta^-D twist has a constant residue", twist);
    return rep;
}

bool flat_limit_matches(const qds::PolySystem& flat, const RescalingData& data) {
    const std::vector<Rational> origin(idx(flat.coord_count()), Rational(0));
    return qds::evaluate_constant(flat.A0(), flat, origin) == data.limit;
}

json::Json encode_rescaling(const RescalingData& data) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "Rescaling";
    j["weights"] = data.wd.weights;
    j["alpha"] = json::encode_vector(data.alpha);
    j["D"] = data.deligne.D;
    j["A0"] = json::encode(data.a0);
    j["pairing"] = json::encode(data.pairing);
    json::Json pieces = json::Json::array();
    for (std::size_t i = 0; i < data.deligne.pieces.size(); ++i)
        pieces.push_back(json::Json{{"x_power", i}, {"matrix", json::encode(data.deligne.pieces[i])}});
    j["graded_pieces"] = pieces;
    j["psi_limit"] = json::encode(data.limit);
    auto verdict = [&](const RMatrix& m) {
        const auto v = check_limit_duality(m, data.pairing, data.alpha, data.wd.n);
        json::Json out{{"self_adjoint", v.self_adjoint}};
        if (v.witness)
            out["witness"] = json::Json{{"a", v.witness->a}, {"b", v.witness->b}, {"S(m e_a, e_b)", v.witness->lhs.str()},
                                        {"S(e_a, m e_b)", v.witness->rhs.str()}};
        return out;
    };
    j["duality"] = json::Json{{"psi_limit", verdict(data.limit)}, {"deligne_A0", verdict(data.deligne.pieces[0])}};
    return j;
}

}  // namespace qdskit::rescaling
