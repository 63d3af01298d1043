#pragma once

#include "qdskit/core/json_io.hpp"
#include "qdskit/core/rational.hpp"

#include <string>
#include <vector>

namespace qdskit::wps {

/// Combinatorial record of a weight vector (1, w₁, …, wₙ) and of the
/// Landau-Ginzburg mirror of the weighted projective space it defines.
/// Basis-indexed sequences use the basis order, not the sorted spectrum.
struct WeightData {
    std::vector<long> weights;  // w₀ = 1, w₁, …, wₙ
    int n = 0;
    int mu = 0;                 // 1 + w₁ + … + wₙ
    Rational r;                 // 1 / lcm(w₀, …, wₙ)
    Rational w_pow_w;           // Π w_m^{w_m}
    Rational w_prod;            // Π w_m

    std::vector<Rational> f;    // distinct fractional parts f₀ = 0 < … < f_k
    std::vector<int> d;         // block sizes
    std::vector<int> p;         // partial sums p_ℓ = d₀ + … + d_ℓ

    std::vector<std::vector<long>> a;  // a(0), …, a(μ + n)
    std::vector<int> i_seq;            // i(0), …, i(μ + n − 1)

    std::vector<Rational> c;      // c₀ … c_{μ−1}
    std::vector<Rational> alpha;  // α_k = k − μ c_k
    std::vector<int> bar;         // duality index ī
    std::vector<int> block_of;    // block index of each basis slot

    std::vector<Rational> s;          // s_j = Π w_r^{−⌈f_j w_r⌉}
    std::vector<Rational> b;          // b_j
    std::vector<std::vector<int>> C;  // C_j ⊂ {1..n}
    std::vector<int> pair;            // c(j): 1 − f_j = f_{c(j)} (0 ↦ 0)

    int k() const { return static_cast<int>(f.size()) - 1; }
    /// First basis slot of block j (p_{j−1}).
    int block_start(int j) const { return j == 0 ? 0 : p[static_cast<std::size_t>(j) - 1]; }
    /// Index of the a-sequence used by block j: μ + n − p_j + 1.
    int a_index(int j) const { return mu + n - p[static_cast<std::size_t>(j)] + 1; }
};

WeightData build_weight_data(const std::vector<long>& weights);

/// s_j · b_j · Π_{m ∈ C_j} 1/w_m = 1 for j = 1..k, exactly.
bool check_gamma_constant_identity(const WeightData& wd);

/// Parses "1,2,5" into a weight vector.
std::vector<long> parse_weights(const std::string& text);

/// The whole record as JSON ("kind": "WeightData").
json::Json encode_weight_data(const WeightData& wd);

}  // namespace qdskit::wps
