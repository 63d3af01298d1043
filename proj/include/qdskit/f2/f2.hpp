#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/report.hpp"
#include "qdskit/f2/rings.hpp"
#include "qdskit/qds/system.hpp"
#include "qdskit/qds/wps_systems.hpp"

#include <string>
#include <vector>

namespace qdskit::f2 {

using SMatrix = Matrix<SRing>;
using SSystem = qds::QDSystem<SRing>;

enum class F2Basis { Triangle, Omega, Flat, Can, CanR };

F2Basis parse_f2_basis(const std::string& name);
std::string f2_basis_name(F2Basis b);

/// An entry of a printed matrix that the implementation replaces, because the
/// printed value breaks flatness, the metric relations or a base change.
struct Deviation {
    std::string where;
    std::string printed;
    std::string used;
};

/// The mirror connection of F₂ in one basis.  sys holds logarithmic matrices
/// (τ∂τ, q₂∂q₂, q₁∂q₁); `printed` keeps the matrices as displayed, where
/// the q-directions of the triangle, flat and can bases are ∇_{∂q} without
/// the factor q.
struct F2Connection {
    F2Basis basis = F2Basis::Omega;
    Rational p24;              // free parameter of the flat family
    SSystem sys;
    std::vector<SMatrix> printed;
    bool printed_log = true;   // whether the printed q-directions are logarithmic
    SMatrix from_omega;        // P with (this basis) = (omega basis)·P
    std::vector<Deviation> deviations;
};

/// Flat basis change with free p₂₄; p₂₄ = 0 is the flat chart, −1/2 the canonical one.
SMatrix flat_base_change(const Rational& p24);
/// ω = △·diag(1, q₂, q₁q₂, q₁), so △ = ω·diag(1, q₂⁻¹, (q₁q₂)⁻¹, q₁⁻¹).
SMatrix triangle_base_change();

/// The connection in the basis ω·P: Ω' = P⁻¹ΩP + P⁻¹·x∂x P and g' = PᵀgP.
SSystem change_basis(const SSystem& sys, const SMatrix& P, const std::string& label);

/// Builds a q-chart basis from the printed matrices; p24 is used only by Flat
/// (the printed matrices exist for p24 = 0; other values are derived from omega).
F2Connection build_f2(F2Basis basis, const Rational& p24 = Rational(0));

/// The canonical basis in the flat coordinates (r₁, r₂): polynomial matrices.
qds::PolySystem build_f2_flat_chart();

/// (i) zero curvature, (ii) metric relations, (iii) agreement with the base
/// change from the omega basis.
Report verify_f2(const F2Connection& conn);

/// Chart change of the canonical basis onto the printed r-chart matrices, the
/// branch identity, and flatness of ξ₁, ξ₁^{can}, ξ₂ for the residual connection.
Report flat_coordinate_check();

/// Monodromies around τ = 0, q₂ = 0, q₁ = 0 in the W basis.
struct Monodromy {
    Matrix<Rational> tau, q2, q1;
};
Monodromy monodromy();
Report check_monodromy(const Monodromy& m);

/// Quantum product of F₂ in the basis (1, f, H, f∘H).
struct F2ProductTable {
    Matrix<QPoly> f_op, h_op, metric, gamma;
};
F2ProductTable f2_quantum_product();
Report check_f2_product(const F2ProductTable& t);

/// Crepant specialization onto ℙ(1,1,2); polynomials in (r₁, r₂, τ) and then in Q.
struct CrepantLimit {
    Matrix<GPoly> in_can;          // −½θ r₂∇_{r₂} in ω^{can}
    Matrix<GPoly> in_orbifold;     // in the basis (ω₀, ½ω₁, ½ω₂, iω₃ + (i/2)ω₁)
    Matrix<GPoly> at_r1;           // r₁ = −1
    Matrix<GPoly> p_product;       // r₂ = −iQ, variable Q in slot 1
    std::vector<std::vector<GPoly>> images;  // 1, H, H∘f, f in (1, p, p², 1_{1/2})
    std::vector<Deviation> deviations;
};
CrepantLimit crepant_limit();
Report check_crepant(const CrepantLimit& c);

/// Aggregate of every check above across all bases.
struct F2Report {
    Report report;
    std::vector<Deviation> deviations;
};
F2Report f2_full_check();

json::Json encode_connection(const F2Connection& conn);
json::Json encode_f2_report(const F2Report& r);

}  // namespace qdskit::f2
