#include "qdskit/birkhoff/solution.hpp"

#include "qdskit/core/error.hpp"
#include "qdskit/core/series.hpp"

#include <algorithm>
#include <numeric>

namespace qdskit::birkhoff {

namespace {

using Expansion = std::map<MultiIndex, TauSlices>;

int total(const MultiIndex& d) { return std::accumulate(d.begin(), d.end(), 0); }

/// Splits a coordinate matrix into constant matrices by (x-multidegree, τ-power).
Expansion expand(const PolySystem& sys, const Matrix<QPoly>& m) {
    const int mu = sys.rank;
    Expansion out;
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j)
            for (const auto& [mono, c] : m(i, j).terms()) {
                MultiIndex e;
                for (int v : sys.coords) e.push_back(mono[v]);
                int s = mono[sys.tau];
                for (int v = 0; v < mono.size(); ++v) {
                    bool known = v == sys.tau || std::find(sys.coords.begin(), sys.coords.end(), v) != sys.coords.end();
                    if (!known && mono[v] != 0) throw Error(ErrorCode::UnknownVariable, "matrix entry uses a non-coordinate variable");
                }
                if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
                    throw Error(ErrorCode::ExponentOutOfRange, "connection matrix is not polynomial in the coordinates");
                if (s < 0 || s > 1) throw Error(ErrorCode::ExponentOutOfRange, "connection matrix is not logarithmic in tau");
                auto& slot = out[e][s];
                if (slot.rows() == 0) slot = Matrix<Rational>(mu, mu);
                slot(i, j) += c;
            }
    return out;
}

/// Multi-indices of the given total degree, lexicographically decreasing
/// in the first coordinate.
void enumerate(int dims, int degree, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == dims - 1) {
        cur.push_back(degree);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = degree; a >= 0; --a) {
        cur.push_back(a);
        enumerate(dims, degree - a, cur, out);
        cur.pop_back();
    }
}

bool leq(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

MultiIndex minus(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

Matrix<QPoly> truncate(const Matrix<QPoly>& m, const std::vector<int>& vars, int degree) {
    return map_matrix<QPoly>(m, [&](const QPoly& p) { return p.truncated(vars, degree); });
}

/// Value at the origin of the coordinate space (τ left free).
Matrix<QPoly> at_origin(const PolySystem& sys, const Matrix<QPoly>& m) {
    Matrix<QPoly> r = m;
    for (int v : sys.coords) r = coeff(r, v, 0);
    return r;
}

QPoly negate_tau(const QPoly& p, int tau) {
    QPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, m[tau] % 2 ? -c : c);
    return r;
}

Matrix<QPoly> lift(const Matrix<Rational>& m) {
    return map_matrix<QPoly>(m, [](const Rational& q) { return QPoly(q); });
}

/// exp(X) for nilpotent X.
Matrix<QPoly> nilpotent_exp(const Matrix<QPoly>& x) {
    const int mu = x.rows();
    Matrix<QPoly> result = Matrix<QPoly>::identity(mu), term = result;
    for (int k = 1; k <= mu; ++k) {
        term = x * term;
        if (term.is_zero_matrix()) return result;
        term = QPoly(Rational(1, k)) * term;
        result += term;
    }
    if (!term.is_zero_matrix()) throw Error(ErrorCode::NotFlat, "log-monodromy matrix is not nilpotent");
    return result;
}

Matrix<QPoly> log_exponential(const FundamentalSolution& fs, const std::vector<int>& log_vars, bool transposed) {
    const auto& sys = fs.sys;
    Matrix<QPoly> x(sys.rank, sys.rank);
    for (int k = 0; k < sys.coord_count(); ++k) {
        Matrix<QPoly> m1 = at_origin(sys, sys.M1(k));
        if (transposed) m1 = m1.transpose();
        x += (QPoly::var(sys.tau) * QPoly::var(log_vars[static_cast<std::size_t>(k)])) * m1;
    }
    return nilpotent_exp(x);
}

std::vector<QPoly> column(const Matrix<QPoly>& m, int j) { return m.column(j); }

std::vector<QPoly> mat_vec(const Matrix<QPoly>& m, const std::vector<QPoly>& v) {
    std::vector<QPoly> r(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k)
            if (!m(i, k).is_zero()) r[static_cast<std::size_t>(i)] += m(i, k) * v[static_cast<std::size_t>(k)];
    return r;
}

}  // namespace

const TauSlices& FundamentalSolution::slice(const MultiIndex& d) const {
    static const TauSlices empty;
    auto it = H.find(d);
    return it == H.end() ? empty : it->second;
}

Matrix<Rational> FundamentalSolution::at(const MultiIndex& d, int r) const {
    const auto& s = slice(d);
    auto it = s.find(r);
    return it == s.end() ? Matrix<Rational>(sys.rank, sys.rank) : it->second;
}

Matrix<QPoly> FundamentalSolution::as_matrix() const {
    Matrix<QPoly> m(sys.rank, sys.rank);
    for (const auto& [d, slices] : H)
        for (const auto& [r, h] : slices) {
            std::vector<int> e(sys.names.size(), 0);
            for (std::size_t k = 0; k < d.size(); ++k) e[static_cast<std::size_t>(sys.coords[k])] = d[k];
            e[static_cast<std::size_t>(sys.tau)] = r;
            Monomial mono(e);
            for (int i = 0; i < sys.rank; ++i)
                for (int j = 0; j < sys.rank; ++j)
                    if (!h(i, j).is_zero()) m(i, j).add_term(mono, h(i, j));
        }
    return m;
}

FundamentalSolution solve_h(const PolySystem& sys, int max_degree) {
    const int mu = sys.rank;
    const int m = sys.coord_count();
    FundamentalSolution fs;
    fs.sys = sys;
    fs.max_degree = max_degree;
    fs.H[MultiIndex(static_cast<std::size_t>(m), 0)][0] = Matrix<Rational>::identity(mu);

    // Residue data per coordinate: constant diagonal M₀ and the τ-part at the origin.
    std::vector<std::vector<Rational>> shifts(static_cast<std::size_t>(m));
    std::vector<Matrix<Rational>> b(static_cast<std::size_t>(m));
    std::vector<Expansion> tails(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        Expansion ex = expand(sys, sys.coord_matrices[static_cast<std::size_t>(k)]);
        MultiIndex zero(static_cast<std::size_t>(m), 0);
        Matrix<Rational> c0 = ex[zero].count(0) ? ex[zero][0] : Matrix<Rational>(mu, mu);
        b[static_cast<std::size_t>(k)] = ex[zero].count(1) ? ex[zero][1] : Matrix<Rational>(mu, mu);
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j)
                if (i != j && !c0(i, j).is_zero())
                    throw Error(ErrorCode::NonResonanceViolated, "residue M0(0) is not diagonal");
        for (const auto& [e, s] : ex)
            if (e != zero && s.count(0))
                for (int i = 0; i < mu; ++i)
                    for (int j = 0; j < mu; ++j)
                        if (!s.at(0)(i, j).is_zero())
                            throw Error(ErrorCode::NonResonanceViolated, "residual part M0 depends on the coordinates");
        for (int i = 0; i < mu; ++i) shifts[static_cast<std::size_t>(k)].push_back(c0(i, i));
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j)
                if ((c0(j, j) - c0(i, i)).abs() >= Rational(1))
                    throw Error(ErrorCode::NonResonanceViolated, "residue eigenvalues differ by at least 1");
        ex.erase(zero);
        tails[static_cast<std::size_t>(k)] = std::move(ex);
    }

    for (int deg = 1; deg <= max_degree; ++deg) {
        std::vector<MultiIndex> level;
        MultiIndex cur;
        enumerate(m, deg, cur, level);
        for (const MultiIndex& d : level) {
            int k = 0;
            while (d[static_cast<std::size_t>(k)] == 0) ++k;
            const auto& tail = tails[static_cast<std::size_t>(k)];
            const auto& c = shifts[static_cast<std::size_t>(k)];
            const auto& bk = b[static_cast<std::size_t>(k)];
            // Largest τ-power any source term can reach.
            int src_max = -1;
            for (const auto& [e, s] : tail) {
                if (!leq(e, d)) continue;
                const auto& lower = fs.slice(minus(d, e));
                if (lower.empty()) continue;
                src_max = std::max(src_max, lower.rbegin()->first + s.rbegin()->first);
            }
            const int cap = (2 * mu + 1) * deg;
            TauSlices out;
            Matrix<Rational> prev(mu, mu);
            for (int r = 0;; ++r) {
                Matrix<Rational> rhs(mu, mu);
                if (r >= 1) rhs = prev * bk - bk * prev;
                for (const auto& [e, s] : tail) {
                    if (!leq(e, d)) continue;
                    const auto& lower = fs.slice(minus(d, e));
                    for (const auto& [sp, me] : s) {
                        auto it = lower.find(r - sp);
                        if (it != lower.end()) rhs -= me * it->second;
                    }
                }
                Matrix<Rational> h(mu, mu);
                for (int i = 0; i < mu; ++i)
                    for (int j = 0; j < mu; ++j) {
                        if (rhs(i, j).is_zero()) continue;
                        Rational shift = Rational(d[static_cast<std::size_t>(k)]) - (c[static_cast<std::size_t>(j)] - c[static_cast<std::size_t>(i)]);
                        if (shift.is_zero()) throw Error(ErrorCode::NonResonanceViolated, "zero shift in the recursion");
                        h(i, j) = rhs(i, j) / shift;
                    }
                bool zero = h.is_zero_matrix();
                if (!zero) out[r] = h;
                if (zero && r >= src_max) break;
                if (r > cap) throw Error(ErrorCode::TerminationBoundExceeded, "tau-degree of H exceeds the safety cap");
                prev = h;
            }
            if (!out.empty()) fs.H[d] = std::move(out);
        }
    }
    return fs;
}

Rational CorrelatorTable::get(const MultiIndex& d, int r, int a, int j) const {
    auto it = entries.find(Key{d, r, a, j});
    return it == entries.end() ? Rational(0) : it->second;
}

CorrelatorTable correlators(const FundamentalSolution& fs) {
    const auto& sys = fs.sys;
    const int mu = sys.rank;
    std::vector<int> bar(static_cast<std::size_t>(mu), -1);
    std::vector<Rational> gval(static_cast<std::size_t>(mu));
    for (int j = 0; j < mu; ++j)
        for (int l = 0; l < mu; ++l) {
            const QPoly& e = sys.g(j, l);
            if (e.is_zero()) continue;
            if (!e.is_constant() || bar[static_cast<std::size_t>(j)] >= 0)
                throw Error(ErrorCode::PairingNotAdapted, "pairing row " + std::to_string(j) + " is not a single constant");
            bar[static_cast<std::size_t>(j)] = l;
            gval[static_cast<std::size_t>(j)] = e.constant_term();
        }
    for (int j = 0; j < mu; ++j)
        if (bar[static_cast<std::size_t>(j)] < 0) throw Error(ErrorCode::PairingNotAdapted, "pairing row is zero");

    CorrelatorTable t;
    t.max_degree = fs.max_degree;
    t.rank = mu;
    for (const auto& [d, slices] : fs.H) {
        if (total(d) == 0) continue;
        for (const auto& [r1, h] : slices) {
            if (r1 < 1) continue;
            for (int a = 0; a < mu; ++a)
                for (int j = 0; j < mu; ++j) {
                    Rational v = gval[static_cast<std::size_t>(j)] * h(bar[static_cast<std::size_t>(j)], a);
                    if (!v.is_zero()) t.entries[{d, r1 - 1, a, j}] = v;
                }
        }
    }
    return t;
}

std::vector<CorrelatorTable::Key> degree_axiom_violations(const CorrelatorTable& t,
                                                          const std::vector<Rational>& degrees, int n,
                                                          const Rational& slope) {
    std::vector<CorrelatorTable::Key> bad;
    for (const auto& [key, v] : t.entries) {
        Rational lhs = Rational(2 * key.r) + degrees[static_cast<std::size_t>(key.a)] + degrees[static_cast<std::size_t>(key.j)];
        Rational rhs = Rational(2 * (n - 1)) + Rational(2) * slope * Rational(total(key.d));
        if (lhs != rhs) bad.push_back(key);
    }
    return bad;
}

Matrix<QPoly> inverse_solution(const FundamentalSolution& fs) {
    const auto& sys = fs.sys;
    const int mu = sys.rank;
    if (sys.coord_count() == 1) {
        // One coordinate: invert the x-series with matrix coefficients in τ.
        TruncatedSeries<Matrix<QPoly>> h(fs.max_degree + 1, Matrix<QPoly>(mu, mu));
        for (const auto& [d, slices] : fs.H)
            for (const auto& [r, m] : slices)
                h[d[0]] += QPoly::var(sys.tau, r) * lift(m);
        auto inv = series_invert(h);
        Matrix<QPoly> out(mu, mu);
        for (int k = 0; k < inv.order(); ++k) out += QPoly::var(sys.coords[0], k) * inv[k];
        return out;
    }
    // Several coordinates: Neumann series in the positive-degree part.
    Matrix<QPoly> n = fs.as_matrix() - Matrix<QPoly>::identity(mu);
    Matrix<QPoly> out = Matrix<QPoly>::identity(mu), term = out;
    for (int k = 1; k <= fs.max_degree; ++k) {
        term = truncate(-(n * term), sys.coords, fs.max_degree);
        out += term;
    }
    return out;
}

JFunction j_function(const FundamentalSolution& fs, int primitive) {
    const auto& sys = fs.sys;
    if (!sys.is_flat()) throw Error(ErrorCode::NotFlat, "J-function needs a flat system");
    JFunction j;
    j.names = sys.names;
    for (int k = 0; k < sys.coord_count(); ++k) {
        j.log_vars.push_back(static_cast<int>(j.names.size()));
        j.names.push_back("L" + sys.names[static_cast<std::size_t>(sys.coords[static_cast<std::size_t>(k)])]);
        j.log_matrices.push_back(at_origin(sys, sys.M1(k)).map([](const QPoly& p) { return p.constant_term(); }));
    }
    j.primitive = primitive;
    j.max_degree = fs.max_degree;
    j.hinv_column = column(inverse_solution(fs), primitive);
    j.value = mat_vec(log_exponential(fs, j.log_vars, false), j.hinv_column);
    return j;
}

bool check_j_operator(const JFunction& j, const FundamentalSolution& fs, int power, int sign) {
    const auto& sys = fs.sys;
    if (sys.coord_count() != 1) throw Error(ErrorCode::DimensionMismatch, "operator check needs one coordinate");
    const int x = sys.coords[0], lv = j.log_vars[0];
    const QPoly theta = QPoly::var(sys.tau, -1);
    std::vector<QPoly> v = j.value;
    for (int p = 0; p < power; ++p)
        for (auto& e : v) e = theta * (e.log_diff(x) + e.diff(lv));
    for (std::size_t i = 0; i < v.size(); ++i) {
        QPoly rhs = (QPoly::var(x) * j.value[i]).scaled(Rational(sign)).truncated({x}, fs.max_degree);
        if (v[i].truncated({x}, fs.max_degree) != rhs) return false;
    }
    return true;
}

Report verify_solution(const FundamentalSolution& fs) {
    const auto& sys = fs.sys;
    const int D = fs.max_degree;
    Report rep;
    Matrix<QPoly> h = fs.as_matrix();
    auto trunc = [&](const Matrix<QPoly>& m) { return truncate(m, sys.coords, D); };

    for (int k = 0; k < sys.coord_count(); ++k) {
        const auto& mk = sys.coord_matrices[static_cast<std::size_t>(k)];
        int v = sys.coords[static_cast<std::size_t>(k)];
        bool ok = log_diff(h, v) == trunc(h * at_origin(sys, mk) - mk * h);
        rep.add("x-equation (" + sys.names[static_cast<std::size_t>(v)] + ")", ok);
    }
    rep.add("tau-equation", log_diff(h, sys.tau) == trunc(h * at_origin(sys, sys.tau_matrix) - sys.tau_matrix * h));

    Matrix<QPoly> hm = h.map([&](const QPoly& p) { return negate_tau(p, sys.tau); });
    rep.add("symmetry H(-tau)^T g H(tau) = g", trunc(hm.transpose() * sys.g * h) == trunc(sys.g));

    if (sys.is_flat()) {
        JFunction j = j_function(fs, 0);
        auto ginv = sys.g.try_inverse();
        if (!ginv) throw Error(ErrorCode::SingularPairing, "pairing matrix is not invertible");
        Matrix<QPoly> rhs = *ginv * log_exponential(fs, j.log_vars, true) * hm.transpose() * sys.g;
        std::vector<QPoly> expected = column(rhs, 0);
        bool ok = true;
        for (std::size_t i = 0; i < expected.size(); ++i)
            ok = ok && expected[i].truncated(sys.coords, D) == j.value[i].truncated(sys.coords, D);
        rep.add("pairing formula for J", ok);
    }
    return rep;
}

json::Json encode_correlators(const CorrelatorTable& t) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "CorrelatorTable";
    j["max_degree"] = t.max_degree;
    j["rank"] = t.rank;
    json::Json arr = json::Json::array();
    for (const auto& [k, v] : t.entries) {
        json::Json e;
        if (k.d.size() == 1) e["d"] = k.d[0];
        else e["d"] = k.d;
        e["r"] = k.r;
        e["a"] = k.a;
        e["j"] = k.j;
        e["value"] = v.str();
        arr.push_back(e);
    }
    j["entries"] = arr;
    return j;
}

json::Json encode_jfunction(const JFunction& j) {
    json::Json out;
    out["schema"] = "qds-kit/1";
    out["kind"] = "JFunction";
    out["variables"] = j.names;
    out["primitive"] = j.primitive;
    out["x_order"] = j.max_degree;
    json::Json lm = json::Json::array();
    for (const auto& m : j.log_matrices) lm.push_back(json::encode(m));
    out["log_matrices"] = lm;
    out["hinv_column"] = json::encode_vector(j.hinv_column);
    out["value"] = json::encode_vector(j.value);
    return out;
}

json::Json encode_solution(const FundamentalSolution& fs) {
    json::Json out;
    out["schema"] = "qds-kit/1";
    out["kind"] = "FundamentalSolution";
    out["max_degree"] = fs.max_degree;
    json::Json arr = json::Json::array();
    for (const auto& [d, slices] : fs.H)
        for (const auto& [r, m] : slices) {
            json::Json e;
            if (d.size() == 1) e["d"] = d[0];
            else e["d"] = d;
            e["r"] = r;
            e["matrix"] = json::encode(m);
            arr.push_back(e);
        }
    out["slices"] = arr;
    return out;
}

}  // namespace qdskit::birkhoff
