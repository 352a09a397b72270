// Hemisphere and halfspace predicates on character classes, polyhedral cone
// families, and m-tameness certificates. All decisions are exact rational
// linear feasibility; a subset of S(Q) lies in an open hemisphere iff its
// representative vectors lie in an open halfspace, so a single routine
// serves both forms.
#pragma once

#include "character.hpp"
#include "linear.hpp"
#include "valuation.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace metafp {

struct HalfspaceResult {
    bool inside = false;              // true iff an open halfspace contains the set
    std::optional<Character> witness; // functional u with u.v > 0 for all v
};

/// Decides whether some u satisfies u.v > 0 for every v in the set.
inline HalfspaceResult find_open_halfspace(const std::vector<Character>& chars) {
    if (chars.empty()) return {true, std::nullopt};
    std::size_t dim = chars.front().size();
    for (const Character& c : chars) {
        if (c.size() != dim) throw std::invalid_argument("open_halfspace: length mismatch");
        if (is_zero_vector(c)) throw std::invalid_argument("open_halfspace: zero vector present");
    }
    LinearFeasibility lp(dim);
    for (const Character& c : chars) lp.add_ge(c, Rat{0}, /*strict=*/true);
    auto sol = lp.solve();
    if (!sol) return {false, std::nullopt};
    return {true, std::move(*sol)};
}

/// Linear inequality over a cone's coefficient vector: a . coeffs (>|>=) 0.
struct CoeffConstraint {
    std::vector<Rat> a;
    bool strict = false;
};

/// Relatively open rational polyhedral cone, described by generator
/// characters and homogeneous constraints on their coefficients. Every
/// admissible coefficient vector must yield a nonzero character.
struct Cone {
    std::string name;
    std::vector<Character> generators;
    std::vector<CoeffConstraint> constraints;

    std::size_t arity() const { return generators.size(); }
    std::size_t ambient_dim() const { return generators.empty() ? 0 : generators.front().size(); }
};

struct ConeFamily {
    std::vector<Cone> cones;
};

/// Single-ray cone k*chi, k > 0.
inline Cone ray_cone(std::string name, Character chi) {
    Cone c;
    c.name = std::move(name);
    c.generators.push_back(std::move(chi));
    c.constraints.push_back({{Rat{1}}, true});
    return c;
}

/// Is the class of chi in the cone, i.e. does some admissible coefficient
/// vector produce a positive multiple of chi? Cones are invariant under
/// positive scaling, so testing the point itself suffices.
inline bool cone_contains(const Cone& cone, const Character& chi) {
    std::size_t dim = cone.ambient_dim();
    if (chi.size() != dim) throw std::invalid_argument("cone_contains: length mismatch");
    LinearFeasibility lp(cone.arity());
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<Rat> row(cone.arity());
        for (std::size_t g = 0; g < cone.arity(); ++g) row[g] = cone.generators[g][d];
        lp.add_eq(std::move(row), chi[d]);
    }
    for (const CoeffConstraint& cc : cone.constraints) {
        std::vector<Rat> row = cc.a;
        row.resize(cone.arity(), Rat{0});
        lp.add_ge(std::move(row), Rat{0}, cc.strict);
    }
    return lp.feasible();
}

inline bool family_contains(const ConeFamily& family, const Character& chi) {
    for (const Cone& c : family.cones)
        if (cone_contains(c, chi)) return true;
    return false;
}

struct TameResult {
    bool tame = false;
    /// When not tame: the m concrete characters (one per chosen cone,
    /// primitive integer form) summing to zero, and the cone indices.
    std::vector<Character> certificate;
    std::vector<std::size_t> cone_indices;
};

namespace detail {

/// Zero-sum feasibility for one multiset of cones; returns the characters.
inline std::optional<std::vector<Character>> zero_sum_choice(const ConeFamily& family,
                                                             const std::vector<std::size_t>& pick) {
    std::size_t dim = family.cones.front().ambient_dim();
    std::size_t nvars = 0;
    std::vector<std::size_t> offset;
    for (std::size_t idx : pick) {
        offset.push_back(nvars);
        nvars += family.cones[idx].arity();
    }
    LinearFeasibility lp(nvars);
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<Rat> row(nvars, Rat{0});
        for (std::size_t i = 0; i < pick.size(); ++i) {
            const Cone& cone = family.cones[pick[i]];
            for (std::size_t g = 0; g < cone.arity(); ++g) row[offset[i] + g] = cone.generators[g][d];
        }
        lp.add_eq(std::move(row), Rat{0});
    }
    for (std::size_t i = 0; i < pick.size(); ++i) {
        const Cone& cone = family.cones[pick[i]];
        for (const CoeffConstraint& cc : cone.constraints) {
            std::vector<Rat> row(nvars, Rat{0});
            for (std::size_t g = 0; g < cc.a.size() && g < cone.arity(); ++g)
                row[offset[i] + g] = cc.a[g];
            lp.add_ge(std::move(row), Rat{0}, cc.strict);
        }
    }
    auto sol = lp.solve();
    if (!sol) return std::nullopt;
    std::vector<Character> chars;
    for (std::size_t i = 0; i < pick.size(); ++i) {
        const Cone& cone = family.cones[pick[i]];
        Character x(dim, Rat{0});
        for (std::size_t g = 0; g < cone.arity(); ++g)
            x = add(x, scale((*sol)[offset[i] + g], cone.generators[g]));
        chars.push_back(primitive(x));
    }
    return chars;
}

template <typename Fn>
bool for_each_multiset(std::size_t n, std::size_t m, Fn&& fn) {
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        if (fn(pick)) return true;
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == n - 1) --i;
        if (i == 0) return false;
        std::size_t v = ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = v;
    }
}

}  // namespace detail

/// m-tameness of the family: no multiset of m cones admits member characters
/// summing to zero. Multisets are scanned in lexicographic order and the
/// first certificate found is returned, so the result is deterministic.
inline TameResult check_m_tame(const ConeFamily& family, long m) {
    if (m < 1) throw std::invalid_argument("check_m_tame: m must be >= 1");
    TameResult res;
    res.tame = true;
    if (family.cones.empty()) return res;
    detail::for_each_multiset(family.cones.size(), static_cast<std::size_t>(m),
                              [&](const std::vector<std::size_t>& pick) {
                                  auto cert = detail::zero_sum_choice(family, pick);
                                  if (!cert) return false;
                                  res.tame = false;
                                  res.certificate = std::move(*cert);
                                  res.cone_indices = pick;
                                  return true;
                              });
    return res;
}

/// Plain-sum variant: does the sum of the given representatives vanish
/// exactly? (The feasibility version allows arbitrary positive rescaling of
/// each class; both are reported by the front end.)
inline bool plain_sum_is_zero(const std::vector<Character>& chars) {
    if (chars.empty()) return false;
    Character s(chars.front().size(), Rat{0});
    for (const Character& c : chars) s = add(s, c);
    return is_zero_vector(s);
}

/// One entry of the standard character set V: the character, its name, and
/// the monomial q_v with v(q_v) = 1.
struct VEntry {
    std::string name;
    ValuationId valuation;
    Character chi;
    QMonomial q_v;
};

/// The n+2 discrete characters [w, v_0, ..., v_n] restricted from the
/// valuations on the designated block, with q_{v_i} = q_i and q_w = q_0^-1.
inline std::vector<VEntry> standard_characters(const SetupPtr& setup) {
    std::vector<VEntry> out;
    VEntry w;
    w.name = "w";
    w.valuation = ValuationId::degree();
    w.chi = character_of(w.valuation, setup);
    w.q_v = QMonomial::generator(*setup, setup->basis_index(0, 0), -1);
    out.push_back(std::move(w));
    for (long i = 0; i <= setup->n(); ++i) {
        VEntry e;
        e.name = "v" + std::to_string(i);
        e.valuation = ValuationId::fadic(*setup, i);
        e.chi = character_of(e.valuation, setup);
        e.q_v = QMonomial::generator(*setup, setup->basis_index(0, i), 1);
        out.push_back(std::move(e));
    }
    return out;
}

/// The rays of the standard characters as a cone family.
inline ConeFamily standard_ray_family(const SetupPtr& setup) {
    ConeFamily fam;
    for (const VEntry& e : standard_characters(setup)) fam.cones.push_back(ray_cone(e.name, e.chi));
    return fam;
}

}  // namespace metafp
