// Closed-form second-cohomology data for the single-block split extensions:
// the two-branch order formula, coefficient reduction into A/(k-1)A, and the
// fixed-point order of the localized residue ring. The enumeration in
// fixed_point_order is the algorithm of record; the front end reports when
// the two routes disagree rather than preferring either.
#pragma once

#include "localized.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace metafp {

/// Order of a finite cyclic group; 1 is the trivial group. Orders produced
/// here always divide k - 1.
struct CyclicGroupOrder {
    Int order{1};
    bool trivial() const { return order == 1; }
    friend bool operator==(const CyclicGroupOrder& a, const CyclicGroupOrder& b) {
        return a.order == b.order;
    }
};

/// The two-branch formula: order k - 1 when f_j(1) = 1 mod (k-1) for every
/// 1 <= j <= n, trivial otherwise. Single-block, cyclic module case.
inline CyclicGroupOrder h2_order(const SetupPtr& setup) {
    if (setup->block_count() != 1)
        throw std::invalid_argument("h2_order: unsupported for multi-block setups");
    Int km1 = setup->k - 1;
    if (km1 == 0) throw std::invalid_argument("h2_order: k must be >= 2");
    const auto& fs = setup->fs();
    bool all_one = true;
    for (std::size_t j = 1; j < fs.size(); ++j) {
        Int v = fs[j].eval(Int{1});
        Int r = (v - 1) % km1;
        if (r != 0) all_one = false;
    }
    return {all_one ? km1 : Int{1}};
}

/// Representative of an element of A/(k-1)A: numerator coefficients reduced
/// into [0, k-2], the k-power dropped (k = 1 in the quotient). Equality in
/// the quotient is decided by cross-multiplying to common f-exponents.
struct CoinvariantElement {
    Poly numer;              // coefficients in [0, k-2]
    std::vector<long> exps;  // f-exponents carried over

    bool is_zero() const { return numer.is_zero(); }
    friend bool operator==(const CoinvariantElement& a, const CoinvariantElement& b) {
        return a.numer == b.numer && a.exps == b.exps;
    }
};

namespace detail {

inline Poly reduce_coeffs(const Poly& p, const Int& km1) {
    if (km1 == 1) return {};
    std::vector<Int> c;
    c.reserve(p.coeffs().size());
    for (const Int& a : p.coeffs()) {
        Int r = a % km1;
        if (r < 0) r += km1;
        c.push_back(r);
    }
    return Poly(std::move(c));
}

}  // namespace detail

/// Reduction of a localized element into A/(k-1)A.
inline CoinvariantElement coinvariants_reduce(const SetupPtr& setup, const Localized& e) {
    Int km1 = setup->k - 1;
    CoinvariantElement out;
    out.exps = e.exps();
    out.numer = detail::reduce_coeffs(e.numer(), km1);
    if (out.numer.is_zero()) out.exps.assign(e.exps().size(), 0);
    return out;
}

/// Equality in the quotient ring: scale both sides to common f-exponents and
/// compare coefficients mod k-1.
inline bool coinvariants_equal(const SetupPtr& setup, const CoinvariantElement& a,
                               const CoinvariantElement& b) {
    Int km1 = setup->k - 1;
    if (km1 == 1) return true;
    if (a.exps.size() != b.exps.size()) return false;
    Poly pa = a.numer, pb = b.numer;
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
        long m = std::min(a.exps[i], b.exps[i]);
        long da = a.exps[i] - m, db = b.exps[i] - m;
        if (da > 0) pa = pa * setup->fs()[i].pow(static_cast<unsigned long>(da));
        if (db > 0) pb = pb * setup->fs()[i].pow(static_cast<unsigned long>(db));
    }
    return detail::reduce_coeffs(pa - pb, km1).is_zero();
}

inline CoinvariantElement coinvariants_mul(const SetupPtr& setup, const CoinvariantElement& a,
                                           const CoinvariantElement& b) {
    Int km1 = setup->k - 1;
    CoinvariantElement out;
    out.numer = detail::reduce_coeffs(a.numer * b.numer, km1);
    out.exps.resize(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i) out.exps[i] = a.exps[i] + b.exps[i];
    if (out.numer.is_zero()) out.exps.assign(a.exps.size(), 0);
    return out;
}

/// Order of { x in R : f_j(1) x = x for all j } where R is Z/(k-1)
/// localized at the values. Normative algorithm: enumeration over Z/(k-1)
/// with the localization kernel (x dies iff some product of values
/// annihilates it).
inline CyclicGroupOrder fixed_point_order(const Int& k, const std::vector<Int>& values) {
    if (k < 2) throw std::invalid_argument("fixed_point_order: k must be >= 2");
    Int n = k - 1;
    if (n == 1) return {Int{1}};
    // The localization collapses Z/n to Z/m, m = n with every prime shared
    // with the product of the values removed.
    Int prod{1};
    for (const Int& v : values) prod *= v;
    Int m = n;
    while (true) {
        Int g = int_gcd(m, prod);
        if (g == 1) break;
        m /= g;
    }
    if (m == 1) return {Int{1}};
    // Enumerate residues of Z/(k-1), map into Z/m, count fixed images.
    std::vector<bool> fixed(static_cast<std::size_t>(static_cast<unsigned long>(m)), false);
    Int count{0};
    for (Int x = 0; x < n; ++x) {
        Int img = x % m;
        bool is_fixed = true;
        for (const Int& v : values) {
            Int r = ((v - 1) * img) % m;
            if (r != 0) {
                is_fixed = false;
                break;
            }
        }
        std::size_t idx = static_cast<std::size_t>(static_cast<unsigned long>(img));
        if (is_fixed && !fixed[idx]) {
            fixed[idx] = true;
            ++count;
        }
    }
    return {count};
}

/// The fixed-point route applied to a setup: values f_j(1), 1 <= j <= n.
inline CyclicGroupOrder fixed_point_order(const SetupPtr& setup) {
    if (setup->block_count() != 1)
        throw std::invalid_argument("fixed_point_order: unsupported for multi-block setups");
    std::vector<Int> values;
    const auto& fs = setup->fs();
    for (std::size_t j = 1; j < fs.size(); ++j) values.push_back(fs[j].eval(Int{1}));
    return fixed_point_order(setup->k, values);
}

}  // namespace metafp
