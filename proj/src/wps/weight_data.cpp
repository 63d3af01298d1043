#include "qdskit/wps/weight_data.hpp"

#include "qdskit/core/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

namespace qdskit::wps {

WeightData build_weight_data(const std::vector<long>& weights) {
    if (weights.empty()) throw Error(ErrorCode::EmptyWeights, "weight vector is empty");
    if (weights[0] != 1) throw Error(ErrorCode::FirstWeightNotOne, "first weight must be 1");
    for (long w : weights)
        if (w < 1) throw Error(ErrorCode::EmptyWeights, "weights must be positive integers");

    WeightData wd;
    wd.weights = weights;
    wd.n = static_cast<int>(weights.size()) - 1;
    wd.mu = static_cast<int>(std::accumulate(weights.begin(), weights.end(), 0L));
    long l = 1;
    for (long w : weights) l = std::lcm(l, w);
    wd.r = Rational(1, l);
    wd.w_pow_w = Rational(1);
    wd.w_prod = Rational(1);
    for (int m = 1; m <= wd.n; ++m) {
        wd.w_pow_w *= Rational(weights[m]).pow(weights[m]);
        wd.w_prod *= Rational(weights[m]);
    }

    std::set<Rational> fs;
    for (long w : weights)
        for (long i = 0; i < w; ++i) fs.insert(Rational(i, w));
    wd.f.assign(fs.begin(), fs.end());
    int total = 0;
    for (const Rational& f : wd.f) {
        int cnt = 0;
        for (long w : weights)
            if ((f * Rational(w)).is_integer()) ++cnt;
        wd.d.push_back(cnt);
        total += cnt;
        wd.p.push_back(total);
    }

    // Greedy walk: always increment the first coordinate with minimal a_i / w_i.
    const int steps = wd.mu + wd.n;
    wd.a.assign(1, std::vector<long>(weights.size(), 0));
    for (int k = 0; k < steps; ++k) {
        const auto& cur = wd.a.back();
        int best = 0;
        for (int i = 1; i <= wd.n; ++i)
            if (Rational(cur[i], weights[i]) < Rational(cur[best], weights[best])) best = i;
        wd.i_seq.push_back(best);
        auto next = cur;
        ++next[best];
        wd.a.push_back(next);
    }

    for (int k = 0; k < wd.mu; ++k) {
        int i = wd.i_seq[k];
        wd.c.push_back(Rational(wd.a[k][i], weights[i]));
        wd.alpha.push_back(Rational(k) - Rational(wd.mu) * wd.c.back());
    }
    for (int i = 0; i < wd.mu; ++i) wd.bar.push_back(i <= wd.n ? wd.n - i : wd.mu + wd.n - i);
    for (int j = 0; j <= wd.k(); ++j)
        for (int t = 0; t < wd.d[j]; ++t) wd.block_of.push_back(j);

    for (int j = 0; j <= wd.k(); ++j) {
        const Rational& fj = wd.f[j];
        Rational s(1);
        for (long w : weights) s *= Rational(w).pow(-(fj * Rational(w)).ceil_long());
        wd.s.push_back(s);

        const auto& aj = wd.a[wd.a_index(j)];
        Rational b(1);
        std::vector<int> Cj;
        for (int m = 1; m <= wd.n; ++m) {
            b *= Rational(weights[m]).pow(weights[m] + 1 - aj[m]);
            if (Rational(weights[m]) * (Rational(1) - fj) == Rational(aj[m])) Cj.push_back(m);
        }
        wd.b.push_back(b);
        wd.C.push_back(Cj);

        Rational target = j == 0 ? Rational(0) : Rational(1) - fj;
        auto it = std::find(wd.f.begin(), wd.f.end(), target);
        wd.pair.push_back(it == wd.f.end() ? -1 : static_cast<int>(it - wd.f.begin()));
    }
    return wd;
}

bool check_gamma_constant_identity(const WeightData& wd) {
    for (int j = 1; j <= wd.k(); ++j) {
        Rational v = wd.s[j] * wd.b[j];
        for (int m : wd.C[j]) v /= Rational(wd.weights[m]);
        if (!v.is_one()) return false;
    }
    return true;
}

std::vector<long> parse_weights(const std::string& text) {
    std::vector<long> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw Error(ErrorCode::ParseError, "empty weight in '" + text + "'");
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(item, &pos);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "not an integer weight: " + item);
        }
        if (pos != item.size()) throw Error(ErrorCode::ParseError, "not an integer weight: " + item);
        w.push_back(v);
    }
    if (w.empty()) throw Error(ErrorCode::EmptyWeights, "weight vector is empty");
    return w;
}

json::Json encode_weight_data(const WeightData& wd) {
    json::Json j;
    j["schema"] = "qds-kit/1";
    j["kind"] = "WeightData";
    j["weights"] = wd.weights;
    j["n"] = wd.n;
    j["mu"] = wd.mu;
    j["r"] = wd.r.str();
    j["w_pow_w"] = wd.w_pow_w.str();
    j["w_prod"] = wd.w_prod.str();
    j["f"] = json::encode_vector(wd.f);
    j["d"] = wd.d;
    j["p"] = wd.p;
    j["a"] = wd.a;
    j["i"] = wd.i_seq;
    j["c"] = json::encode_vector(wd.c);
    j["alpha"] = json::encode_vector(wd.alpha);
    j["bar"] = wd.bar;
    j["block_of"] = wd.block_of;
    j["s"] = json::encode_vector(wd.s);
    j["b"] = json::encode_vector(wd.b);
    j["C"] = wd.C;
    j["conjugate_block"] = wd.pair;
    j["gamma_constant_identity"] = check_gamma_constant_identity(wd);
    return j;
}

}  // namespace qdskit::wps
