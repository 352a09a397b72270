// Vertex stabilizers over the lattice: at the normal-form vertex with
// g_w = q_w^{s_w} and g_v = 1 otherwise, the module part of the stabilizer
// is a free Z[1/k]-module of rank d + 1 with an explicit monomial basis;
// in the single-block case the stabilizer is an HNN extension of a free
// abelian group with all relations t^-1 x_i t = x_i^k. Arbitrary vertices
// reduce to this form by conjugation.
#pragma once

#include "lattice.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace metafp {

struct HnnPresentation {
    long base_rank = 0;     // free abelian generators x_0, ..., x_d
    Int stable_exponent;    // t^-1 x_i t = x_i^stable_exponent
};

struct StabilizerData {
    long s_w = 0;
    long d = 0;
    long rank = 0;  // d + 1
    std::vector<Localized> basis;
    std::optional<HnnPresentation> hnn;  // present in the single-block case
};

/// Stabilizer data at the vertex determined by s_w in [0, -beta):
/// d = -(s_w + beta * sum d_i), basis q_0^{j+beta} (f_1...f_n)^beta for
/// 0 <= j <= d.
inline StabilizerData stabilizer_data(const SetupPtr& setup, long s_w) {
    if (s_w < 0 || s_w >= -setup->beta)
        throw std::invalid_argument("stabilizer_data: s_w must lie in [0, " +
                                    std::to_string(-setup->beta) + ")");
    StabilizerData out;
    out.s_w = s_w;
    out.d = -(s_w + setup->beta * setup->sum_degrees());
    out.rank = out.d + 1;
    std::size_t nf = setup->fs().size();
    for (long j = 0; j <= out.d; ++j) {
        std::vector<long> exps(nf, setup->beta);
        exps[0] = j + setup->beta;
        out.basis.push_back(Localized::make(setup, Poly::constant(Int{1}), std::move(exps), 0));
    }
    if (setup->block_count() == 1) out.hnn = HnnPresentation{out.rank, setup->k};
    return out;
}

/// The defining membership of the stabilizer's module part: v_i(e) >= beta
/// for every i and w(e) >= s_w + beta.
inline bool stabilizer_membership(const SetupPtr& setup, long s_w, const Localized& e) {
    for (long i = 0; i <= setup->n(); ++i)
        if (!(valuation(ValuationId::fadic(*setup, i), e) >= ExtInt(setup->beta))) return false;
    return valuation(ValuationId::degree(), e) >= ExtInt(s_w + setup->beta);
}

struct ConnectivityResult {
    bool ok = false;
    std::optional<std::vector<std::size_t>> failing_subset;  // indices into V
};

/// The halfspace precondition: every m-subset of the standard characters
/// must lie in an open halfspace. Reports the first failing subset.
inline ConnectivityResult connectivity_precondition(const SetupPtr& setup, long m) {
    if (m < 1) throw std::invalid_argument("connectivity_precondition: m must be >= 1");
    auto V = standard_characters(setup);
    std::size_t n = V.size();
    ConnectivityResult res;
    res.ok = true;
    if (static_cast<std::size_t>(m) > n) return res;  // no m-subsets
    std::vector<std::size_t> comb(static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < comb.size(); ++j) comb[j] = j;
    while (true) {
        std::vector<Character> chars;
        for (std::size_t i : comb) chars.push_back(V[i].chi);
        if (!find_open_halfspace(chars).inside) {
            res.ok = false;
            res.failing_subset = comb;
            return res;
        }
        std::size_t i = comb.size();
        while (i > 0 && comb[i - 1] == n - comb.size() + (i - 1)) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < comb.size(); ++j) comb[j] = comb[j - 1] + 1;
    }
    return res;
}

}  // namespace metafp
