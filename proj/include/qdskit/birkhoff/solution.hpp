#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/matrix.hpp"
#include "qdskit/core/report.hpp"
#include "qdskit/qds/wps_systems.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace qdskit::birkhoff {

using qds::PolySystem;
using MultiIndex = std::vector<int>;
using TauSlices = std::map<int, Matrix<Rational>>;  // τ-power → constant matrix

/// Canonical solution H(x, τ) = Σ_d x^d Σ_r H^{d,r} τ^r of the non-resonant
/// recursion, normalized by H(0, τ) = I.
struct FundamentalSolution {
    PolySystem sys;
    int max_degree = 0;                     // total x-degree solved
    std::map<MultiIndex, TauSlices> H;      // only nonzero slices are stored

    const TauSlices& slice(const MultiIndex& d) const;
    Matrix<Rational> at(const MultiIndex& d, int r) const;
    /// H as a matrix of polynomials in (coordinates, τ).
    Matrix<QPoly> as_matrix() const;
};

/// Solves (d_k − (c_j − c_i))·H^{d,r}_ij = [H^{d,r−1}M₁(0) − M₁(0)H^{d,r−1}
/// − Σ_{0<e≤d} (M^{(e)} H^{d−e})^{(r)}]_ij for every multi-degree up to
/// max_degree, using any coordinate k with d_k > 0.
FundamentalSolution solve_h(const PolySystem& sys, int max_degree);

/// Two-point genus-zero correlators ⟨τ_r ω_a, ω_j⟩_{0,2,d}.
struct CorrelatorTable {
    struct Key {
        MultiIndex d;
        int r, a, j;
        friend bool operator<(const Key& x, const Key& y) {
            return std::tie(x.d, x.r, x.a, x.j) < std::tie(y.d, y.r, y.a, y.j);
        }
    };
    int max_degree = 0;
    int rank = 0;
    std::map<Key, Rational> entries;  // nonzero values only

    Rational get(const MultiIndex& d, int r, int a, int j) const;
    Rational get(int d, int r, int a, int j) const { return get(MultiIndex{d}, r, a, j); }
};

/// ⟨τ_r ω_a, ω_j⟩_{0,2,d} = g(ω_j, ω_j̄)·H^{d,r+1}_{j̄,a}; zero at d = 0.
CorrelatorTable correlators(const FundamentalSolution& fs);

/// Nonzero correlators off the line 2r + deg ω_a + deg ω_j = 2(n − 1) + 2·c·|d|
/// where c = μ·r_w (the first Chern number per unit degree).
std::vector<CorrelatorTable::Key> degree_axiom_violations(const CorrelatorTable& t,
                                                          const std::vector<Rational>& degrees, int n,
                                                          const Rational& slope);

/// J = e^{τ Σ M₁⁽ᵏ⁾(0) L_k} · H⁻¹ e_primitive, with L_k = log x_k kept as
/// extra polynomial variables appended after the system variables.
struct JFunction {
    VarNames names;                       // system variables then L_k
    std::vector<int> log_vars;            // indices of L_k
    std::vector<Matrix<Rational>> log_matrices;  // M₁⁽ᵏ⁾(0)
    int primitive = 0;
    int max_degree = 0;
    std::vector<QPoly> hinv_column;       // H⁻¹ e_primitive
    std::vector<QPoly> value;             // full J, polynomial in log variables
};

JFunction j_function(const FundamentalSolution& fs, int primitive);

/// Checks (θ x∂x)^{m} J = sign · x J up to the solved x-order, for a single
/// coordinate; x∂x acts on the log variable as well.
bool check_j_operator(const JFunction& j, const FundamentalSolution& fs, int power, int sign);

/// H⁻¹ truncated at total x-degree max_degree.
Matrix<QPoly> inverse_solution(const FundamentalSolution& fs);

/// The four identities: x-equation, τ-equation, symmetry, pairing formula.
Report verify_solution(const FundamentalSolution& fs);

json::Json encode_correlators(const CorrelatorTable& t);
json::Json encode_jfunction(const JFunction& j);
json::Json encode_solution(const FundamentalSolution& fs);

}  // namespace qdskit::birkhoff
