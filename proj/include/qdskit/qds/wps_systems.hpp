#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/poly.hpp"
#include "qdskit/qds/system.hpp"
#include "qdskit/wps/weight_data.hpp"

#include <string>

namespace qdskit::qds {

using PolySystem = QDSystem<QPoly>;

enum class WpsBasis { Omega, RescaledFlat };

/// Mirror system of the weighted projective space.  Variables are (x, tau)
/// for the omega basis and (zeta, tau), zeta = x^r, for the rescaled flat
/// basis.  Degrees default to 2α_i.
PolySystem build_wps_system(const wps::WeightData& wd, WpsBasis basis);

/// ℙⁿ: weights (1, …, 1); both bases coincide.
PolySystem build_projective_space(int n);

WpsBasis parse_basis(const std::string& name);
std::string basis_name(WpsBasis basis);

/// Evaluates every coordinate at the given rational point, leaving τ free.
Matrix<Rational> evaluate_constant(const Matrix<QPoly>& m, const PolySystem& sys, const std::vector<Rational>& point);

/// Pre-primitivity of a basis vector at a point of the coordinate space.
bool is_pre_primitive(const PolySystem& sys, const std::vector<Rational>& point, int candidate);

/// JSON round trip of a polynomial system ("schema": "qds-kit/1").
json::Json encode_system(const PolySystem& sys);
PolySystem decode_system(const json::Json& j);

}  // namespace qdskit::qds
