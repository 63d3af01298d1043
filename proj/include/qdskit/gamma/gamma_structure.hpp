#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/report.hpp"
#include "qdskit/wps/weight_data.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qdskit::gamma {

using Complex = std::complex<double>;
/// Per-block real data: entry [j][i − 1] belongs to basis slot p_{j−1} + i − 1.
using BlockValues = std::vector<std::vector<double>>;

/// Rational structure of the constant B-side bundle of a weighted projective
/// space: the constants Ψ^j_{i,0}, the μ generating vectors, the Γ̂ classes
/// and the conjugation they define.
struct GammaStructure {
    wps::WeightData wd;
    BlockValues constants;                 // Ψ^j_{i,0}
    std::vector<Eigen::VectorXcd> vectors;  // Ψ_ℓ, ℓ = 0..μ−1
    BlockValues gamma_hat;                 // Γ̂_j coefficients of p⁰ … p^{d_j−1}
    Eigen::MatrixXcd conjugation;          // v̄ = C·conj(v)
};

/// Reads Ψ^j_{i,0} off the pole part of the Mellin-side gamma products.
BlockValues psi_constants(const wps::WeightData& wd);

/// Ψ^j_{i,ℓ} = e^{2iπℓf_j} Σ_{m<i} (−2iπℓ)ᵐ/m! · Ψ^j_{i−m,0}.
Complex psi_component(const wps::WeightData& wd, const BlockValues& constants, int j, int i, int ell);

/// The μ vectors Ψ_ℓ assembled from the phase formula.
std::vector<Eigen::VectorXcd> psi_vectors(const wps::WeightData& wd, const BlockValues& constants);

/// Γ̂_j = Π_m Γ(w_m p + 1 − {w_m f_j}) modulo p^{d_j}, with {x} = ⌈x⌉ − x.
/// With include_r the argument is r·w_m·p, so the coefficient of pⁱ gains rⁱ.
BlockValues gamma_hat_classes(const wps::WeightData& wd, bool include_r = false);

/// The μ vectors rebuilt on the A-side: e^{2iπℓf_j} exp(−2iπℓp) ∪ Γ̂_j, sent to
/// the basis by 1_{f_j}pⁱ ↦ s_j⁻¹·(slot p_{j−1} + i).
std::vector<Eigen::VectorXcd> gamma_hat_route(const wps::WeightData& wd, bool include_r = false);

/// Ψ^j_{1,0} = b_j Π_{m∈C_j} w_m⁻¹ Π_{m=0}^{n} Γ(1 − {w_m f_j}); 1 for j = 0.
double leading_constant_closed_form(const wps::WeightData& wd, int j);

/// The antilinear involution fixing every Ψ_ℓ, as C = V·conj(V)⁻¹.
Eigen::MatrixXcd conjugation(const std::vector<Eigen::VectorXcd>& vectors);

GammaStructure build_gamma_structure(const wps::WeightData& wd);

/// ω̄_slot = C·e_slot.
Eigen::VectorXcd conjugate_basis_vector(const GammaStructure& gs, int slot);

/// Image of Γ̂_j ∪ 1_{f_j}pᵐ in the basis.
Eigen::VectorXcd gamma_hat_cup(const GammaStructure& gs, int j, int m);

/// Σ_i Ψ^j_{i,0} ω̄_{p_{j−1}+i−1+m} = (−1)ᵐ Σ_i Ψ^{c(j)}_{i,0} ω_{p_{c(j)−1}+i−1+m}
/// and conj(Γ̂_j ∪ 1_{f_j}pᵐ) = (−1)ᵐ Γ̂_{c(j)} ∪ 1_{f_{c(j)}}pᵐ.
Report check_conjugation(const GammaStructure& gs, double tol);

/// Every invariant: Ψ^0_{1,0} = 1, Ψ^j_{1,ℓ} ≠ 0, closed formula, the two
/// routes, C·C̄ = I and the conjugation relations.
Report check_gamma_structure(const GammaStructure& gs, double tol);

/// For ℙⁿ: Ψ_ℓ = Γ(1 + p)^{n+1} ∪ Σ_m (−ℓ)ᵐ/m! (2iπp)ᵐ, so the rational span is
/// Γ̂₀ ∪ δ(H*(ℙⁿ, ℚ)) with δ(pᵐ) = (2iπ)ᵐpᵐ.
Report check_projective_span(const GammaStructure& gs, double tol);

/// max |a − b| divided by max(1, max |a|).
double relative_difference(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b);

json::Json encode_gamma_structure(const GammaStructure& gs);

}  // namespace qdskit::gamma
