#pragma once

#include "qdskit/core/matrix.hpp"
#include "qdskit/core/rational.hpp"
#include "qdskit/core/report.hpp"
#include "qdskit/core/ring.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qdskit::qds {

/// A quantum differential system given by its connection matrices in a
/// chosen basis, with columns transforming as ∇ω_j = Σ_i Ω_ij ω_i.
///
/// For each log coordinate x_k the full matrix of x_k∇_{∂x_k} is stored,
/// M⁽ᵏ⁾(x, τ) = M₀⁽ᵏ⁾(x) + M₁⁽ᵏ⁾(x)τ; the τ direction stores
/// N(x, τ) = −(A₀(x)τ + A∞) for τ∇_{∂τ}, with τ = 1/θ.  The pairing is
/// S(ω_i, ω_j) = g_ij θⁿ.
template <class R>
struct QDSystem {
    std::string label;
    VarNames names;             // every ring variable
    std::vector<int> coords;    // indices of the log coordinates in names
    int tau = 0;                // index of τ in names
    int rank = 0;
    int weight = 0;             // n, the θ-power of the pairing
    std::vector<Matrix<R>> coord_matrices;
    Matrix<R> tau_matrix;
    Matrix<R> g;
    std::optional<std::vector<Rational>> degrees;  // deg ω_i, when known

    int coord_count() const { return static_cast<int>(coords.size()); }

    Matrix<R> M0(int k) const { return coeff(coord_matrices[static_cast<std::size_t>(k)], tau, 0); }
    Matrix<R> M1(int k) const { return coeff(coord_matrices[static_cast<std::size_t>(k)], tau, 1); }
    Matrix<R> A0() const { return -coeff(tau_matrix, tau, 1); }
    Matrix<R> A_inf() const { return -coeff(tau_matrix, tau, 0); }
    /// Product operator of x_k∂_{x_k}, with the sign Φ = −M₁ making the
    /// primitive section a unit for the product.
    Matrix<R> Phi(int k) const { return -M1(k); }

    bool is_flat() const {
        for (int k = 0; k < coord_count(); ++k)
            if (!M0(k).is_zero_matrix()) return false;
        return true;
    }
};

/// Operator x∂x applied to a matrix: log derivative in the ring variable.
template <class R>
Matrix<R> direction_derivative(const QDSystem<R>& sys, int dir, const Matrix<R>& m) {
    int var = dir < sys.coord_count() ? sys.coords[static_cast<std::size_t>(dir)] : sys.tau;
    return log_diff(m, var);
}

template <class R>
const Matrix<R>& direction_matrix(const QDSystem<R>& sys, int dir) {
    return dir < sys.coord_count() ? sys.coord_matrices[static_cast<std::size_t>(dir)] : sys.tau_matrix;
}

template <class R>
std::string direction_name(const QDSystem<R>& sys, int dir) {
    int var = dir < sys.coord_count() ? sys.coords[static_cast<std::size_t>(dir)] : sys.tau;
    return sys.names[static_cast<std::size_t>(var)];
}

/// Curvature X(Ω_Y) − Y(Ω_X) + [Ω_X, Ω_Y] of two commuting log directions.
template <class R>
Matrix<R> curvature(const QDSystem<R>& sys, int dx, int dy) {
    const auto& ox = direction_matrix(sys, dx);
    const auto& oy = direction_matrix(sys, dy);
    return direction_derivative(sys, dx, oy) - direction_derivative(sys, dy, ox) + commutator(ox, oy);
}

/// Flatness of the full connection, split by τ-degree into the individual
/// relations (▽² = 0, ▽Φ = 0, Φ∧Φ = 0 for two coordinates;
/// ▽V∞ = 0, ▽V₀ + Φ = [Φ, V∞], [V₀, Φ] = 0 for a coordinate and τ).
template <class R>
Report check_integrability(const QDSystem<R>& sys) {
    Report rep;
    const int dirs = sys.coord_count() + 1;
    for (int d = 0; d < dirs; ++d) {
        auto [lo, hi] = degree_range(direction_matrix(sys, d), sys.tau);
        bool log_shape = hi < lo || (lo >= 0 && hi <= 1);
        rep.add("logarithmic shape " + direction_name(sys, d), log_shape,
                log_shape ? "" : "tau-degree outside [0,1]");
    }
    static const char* xx[] = {"residual flatness", "flatness of Phi", "Phi wedge Phi"};
    static const char* xt[] = {"flatness of V_inf", "nabla V0 + Phi = [Phi, V_inf]", "[V0, Phi] = 0"};
    for (int a = 0; a < dirs; ++a)
        for (int b = a + 1; b < dirs; ++b) {
            Matrix<R> f = curvature(sys, a, b);
            std::string pair = direction_name(sys, a) + "," + direction_name(sys, b);
            bool with_tau = b == dirs - 1;
            for (int p = 0; p <= 2; ++p) {
                bool ok = coeff(f, sys.tau, p).is_zero_matrix();
                rep.add(std::string(with_tau ? xt[p] : xx[p]) + " (" + pair + ")", ok);
            }
            auto [lo, hi] = degree_range(f, sys.tau);
            bool rest = hi < lo || (lo >= 0 && hi <= 2);
            rep.add("curvature has no other tau-degrees (" + pair + ")", rest);
        }
    return rep;
}

/// Metric relations V∞ + V∞* = n, V₀* = V₀, Φ* = Φ (adjoint for g) and
/// flatness of g along every coordinate.
template <class R>
Report check_pairing(const QDSystem<R>& sys) {
    if (!sys.g.try_inverse()) throw Error(ErrorCode::SingularPairing, "pairing matrix is not invertible");
    Report rep;
    const auto& g = sys.g;
    rep.add("pairing symmetric", g.transpose() == g);
    Matrix<R> ainf = sys.A_inf();
    rep.add("V_inf + V_inf* = n", ainf.transpose() * g + g * ainf == R(sys.weight) * g);
    Matrix<R> a0 = sys.A0();
    rep.add("V0* = V0", a0.transpose() * g == g * a0);
    for (int k = 0; k < sys.coord_count(); ++k) {
        std::string x = sys.names[static_cast<std::size_t>(sys.coords[static_cast<std::size_t>(k)])];
        Matrix<R> phi = sys.Phi(k);
        rep.add("Phi* = Phi (" + x + ")", phi.transpose() * g == g * phi);
        Matrix<R> c = sys.M0(k);
        rep.add("pairing flat along " + x, log_diff(g, sys.coords[static_cast<std::size_t>(k)]) == c.transpose() * g + g * c);
    }
    rep.add("pairing constant in tau", log_diff(g, sys.tau).is_zero_matrix());
    return rep;
}

/// Structure constants of the product: ops[a] is the matrix of ω_a * (·).
template <class R>
struct ProductTable {
    int primitive = 0;
    std::vector<Matrix<R>> ops;

    std::vector<R> product(int a, int b) const { return ops[static_cast<std::size_t>(a)].column(b); }
};

namespace detail {
template <class R>
Matrix<R> apply_word(const std::vector<Matrix<R>>& phis, const std::vector<int>& word, int rank) {
    Matrix<R> m = Matrix<R>::identity(rank);
    for (int k : word) m = phis[static_cast<std::size_t>(k)] * m;
    return m;
}
}  // namespace detail

/// Linear independence of vectors with entries in R, decided by
/// invertibility of some completion to a square frame by unit vectors.
template <class R>
bool independent(const std::vector<std::vector<R>>& vecs, int mu) {
    const int m = static_cast<int>(vecs.size());
    if (m > mu) return false;
    // Choose mu − m unit vectors to complete; try all subsets (mu is small).
    std::vector<int> pick(static_cast<std::size_t>(mu - m));
    std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
        if (pos == mu - m) {
            Matrix<R> f(mu, mu);
            for (int c = 0; c < m; ++c)
                for (int i = 0; i < mu; ++i) f(i, c) = vecs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            for (int c = 0; c < mu - m; ++c) f(pick[static_cast<std::size_t>(c)], m + c) = R(1);
            return !is_zero(f.determinant());
        }
        for (int s = start; s < mu; ++s) {
            pick[static_cast<std::size_t>(pos)] = s;
            if (rec(pos + 1, s + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

/// Quantum product: words in the Φ operators applied to the primitive
/// section give a frame, and multiplication by ω_a is the matching
/// combination of the words themselves.
template <class R>
ProductTable<R> quantum_product(const QDSystem<R>& sys, int primitive, std::vector<Matrix<R>> phis = {}) {
    const int mu = sys.rank;
    if (phis.empty())
        for (int k = 0; k < sys.coord_count(); ++k) phis.push_back(sys.Phi(k));
    // Breadth-first words, keeping those that enlarge the span (checked over
    // the fraction field through invertibility of the selected columns).
    std::vector<std::vector<int>> words{{}};
    std::vector<std::vector<int>> frontier{{}};
    auto column_of = [&](const std::vector<int>& w) { return detail::apply_word(phis, w, mu).column(primitive); };
    std::vector<std::vector<R>> cols{column_of({})};
    for (int len = 1; len < mu && static_cast<int>(words.size()) < mu; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier)
            for (int k = 0; k < static_cast<int>(phis.size()); ++k) {
                if (static_cast<int>(words.size()) >= mu) break;
                auto nw = w;
                nw.push_back(k);
                auto col = column_of(nw);
                bool zero = std::all_of(col.begin(), col.end(), [](const R& x) { return is_zero(x); });
                if (zero) continue;
                auto trial = cols;
                trial.push_back(col);
                // With one operator the words are its powers; no search needed.
                if (phis.size() > 1 && !independent(trial, mu)) continue;
                cols = std::move(trial);
                words.push_back(nw);
                next.push_back(nw);
            }
        frontier = std::move(next);
    }
    if (static_cast<int>(words.size()) != mu)
        throw Error(ErrorCode::PrimitiveHypothesisFails, "words in the product operators do not span the fiber");
    Matrix<R> W(mu, mu);
    for (int c = 0; c < mu; ++c)
        for (int i = 0; i < mu; ++i) W(i, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    auto winv = W.try_inverse();
    if (!winv) throw Error(ErrorCode::PrimitiveHypothesisFails, "generated frame is not invertible over the base ring");
    ProductTable<R> table;
    table.primitive = primitive;
    for (int a = 0; a < mu; ++a) {
        Matrix<R> op(mu, mu);
        for (int c = 0; c < mu; ++c) {
            const R& coef = (*winv)(c, a);
            if (is_zero(coef)) continue;
            op += coef * detail::apply_word(phis, words[static_cast<std::size_t>(c)], mu);
        }
        table.ops.push_back(op);
    }
    return table;
}

/// Commutativity, associativity, unit and Frobenius property of a table.
template <class R>
Report check_product(const ProductTable<R>& t, const Matrix<R>& g) {
    Report rep;
    const int mu = static_cast<int>(t.ops.size());
    bool comm = true, assoc = true, frob = true;
    for (int a = 0; a < mu; ++a)
        for (int b = 0; b < mu; ++b) comm = comm && t.product(a, b) == t.product(b, a);
    for (int a = 0; a < mu; ++a)
        for (int b = 0; b < mu; ++b) {
            Matrix<R> lhs = t.ops[static_cast<std::size_t>(a)] * t.ops[static_cast<std::size_t>(b)];
            Matrix<R> rhs(mu, mu);
            auto ab = t.product(a, b);
            for (int c = 0; c < mu; ++c)
                if (!is_zero(ab[static_cast<std::size_t>(c)])) rhs += ab[static_cast<std::size_t>(c)] * t.ops[static_cast<std::size_t>(c)];
            assoc = assoc && lhs == rhs;
        }
    for (int a = 0; a < mu; ++a) {
        const auto& op = t.ops[static_cast<std::size_t>(a)];
        frob = frob && op.transpose() * g == g * op;
    }
    rep.add("product commutative", comm);
    rep.add("product associative", assoc);
    rep.add("primitive section is the unit", t.ops[static_cast<std::size_t>(t.primitive)] == Matrix<R>::identity(mu));
    rep.add("Frobenius property", frob);
    return rep;
}

/// Krylov test at a point: the candidate and its images under V₀ and the Φ
/// maps span the fiber.
bool is_pre_primitive(const Matrix<Rational>& a0, const std::vector<Matrix<Rational>>& phis,
                      const std::vector<Rational>& candidate);

}  // namespace qdskit::qds
