#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/matrix.hpp"
#include "qdskit/core/report.hpp"
#include "qdskit/qds/wps_systems.hpp"

#include <optional>
#include <vector>

namespace qdskit::rescaling {

using RMatrix = Matrix<Rational>;
using Spectrum = std::vector<Rational>;

/// x^{−D}(x·A₀ᵒ)x^{D} = Σ_{i=0}^{n+1} xⁱ·pieces[i] with D = diag(⌊α⌋).
struct DeligneDecomposition {
    std::vector<long> D;
    std::vector<RMatrix> pieces;
};

/// Entry (j, k) carries the exponent d_k − d_j + 1, which must lie in [0, n + 1].
DeligneDecomposition deligne_decompose(const RMatrix& a0, const Spectrum& alpha, int n);

/// Σᵢ piecesᵢ = A₀ᵒ and [D, piecesᵢ] = −(i − 1)·piecesᵢ.
Report check_deligne(const DeligneDecomposition& dec, const RMatrix& a0);

/// Keeps the entries (i, j) with α_i = α_j + 1 (row = target).
RMatrix psi_limit(const RMatrix& a0, const Spectrum& alpha);

/// A pair (a, b) with S(m e_a, e_b) ≠ S(e_a, m e_b).
struct DualityWitness {
    int a = 0, b = 0;
    Rational lhs, rhs;
};

struct DualityVerdict {
    bool self_adjoint = true;
    std::optional<DualityWitness> witness;  // the first failing pair, in (a, b) order
};

/// The limit pairing: Sᵒ restricted to α_i + α_j = n.  Both the integral and the
/// fractional blocks keep the factor 1.  Throws DegeneratePairing when Sᵒ is
/// supported off that locus or is singular there.
RMatrix limit_pairing(const RMatrix& s, const Spectrum& alpha, int n);

/// Self-adjointness of m for the limit pairing.
DualityVerdict check_limit_duality(const RMatrix& m, const RMatrix& s, const Spectrum& alpha, int n);

/// Rescaling input of a weighted projective space: spectrum α, A₀ᵒ = A₀ of the
/// omega basis at x = 1, Sᵒ = w₁⋯wₙ times the flat pairing.
struct RescalingData {
    wps::WeightData wd;
    Spectrum alpha;
    RMatrix a0;
    RMatrix pairing;
    DeligneDecomposition deligne;
    RMatrix limit;
};

RescalingData build_rescaling_data(const wps::WeightData& wd);

/// Classical limit of a flat logarithmic system at the origin: the pairing
/// relations for (A₀(0), A∞, g), [A∞, A₀(0)] = A₀(0), and d_i = d_j + 1 on the
/// support of A₀(0) so that the θ^{−D} twist has residue A∞ − D + A₀(0).
Report check_classical_limit(const qds::PolySystem& flat);

/// The A₀ of the flat system at the origin equals ψₓA₀ of the rescaling data.
bool flat_limit_matches(const qds::PolySystem& flat, const RescalingData& data);

json::Json encode_rescaling(const RescalingData& data);

}  // namespace qdskit::rescaling
