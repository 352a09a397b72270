// The product-of-trees lattice layer: the hyperplane W cut out by
// y_w + sum d_i y_i = 0 (coordinates indexed by V, w first), coordinate-wise
// ceilings [[.]], the finite orbit representatives of Q acting on [[W]], and
// the Chinese-remainder normalization that replaces a tuple of labels by a
// single label.
#pragma once

#include "tree.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace metafp {

/// Integer vector indexed by V (w first, then v_0..v_n).
struct LatticePoint {
    std::vector<Int> coords;

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.coords == b.coords;
    }
};

/// beta = -(2 + sum of block-1 degrees).
inline long compute_beta(const SetupPtr& setup) { return setup->beta; }

/// Value of the defining linear form s_w + sum d_i s_{v_i}.
inline Int w_form_value(const SetupPtr& setup, const LatticePoint& p) {
    const auto& d = setup->degrees;
    if (p.coords.size() != d.size() + 1) throw std::invalid_argument("lattice point length mismatch");
    Int s = p.coords[0];
    for (std::size_t i = 0; i < d.size(); ++i) s += Int(d[i]) * p.coords[i + 1];
    return s;
}

struct CeilProjection {
    bool in_w = false;       // the rational point satisfies the W equation
    LatticePoint ceil;       // coordinate-wise least integers above
    Int bound_value;         // the linear form at the ceiling
};

/// Membership of a rational point in W, its coordinate-wise ceiling, and the
/// bound value 0 <= s_w + sum d_i s_{v_i} < 1 + sum d_i that ceilings of W
/// points satisfy.
inline CeilProjection w_project_ceil(const SetupPtr& setup, const std::vector<Rat>& point) {
    const auto& d = setup->degrees;
    if (point.size() != d.size() + 1) throw std::invalid_argument("point length must be |V|");
    CeilProjection out;
    Rat form = point[0];
    for (std::size_t i = 0; i < d.size(); ++i) form += Rat(d[i]) * point[i + 1];
    out.in_w = form == 0;
    out.ceil.coords.reserve(point.size());
    for (const Rat& r : point) out.ceil.coords.push_back(rat_ceil(r));
    out.bound_value = w_form_value(setup, out.ceil);
    return out;
}

/// The finite set of orbit representatives { (s_w, 0, ..., 0) :
/// 0 <= s_w < 1 + sum d_i } of Q acting on [[W]] by translation.
inline std::vector<LatticePoint> orbit_reps(const SetupPtr& setup) {
    std::vector<LatticePoint> reps;
    long count = 1 + setup->sum_degrees();
    for (long s = 0; s < count; ++s) {
        LatticePoint p;
        p.coords.assign(setup->degrees.size() + 1, Int{0});
        p.coords[0] = s;
        reps.push_back(std::move(p));
    }
    return reps;
}

struct OrbitReduction {
    LatticePoint representative;  // v_i-coordinates zero
    QMonomial translation;        // the q with point * q = representative
    bool is_orbit_rep = false;    // s_w landed in [0, 1 + sum d_i)
};

/// Translates an integer point by q = prod q_i^{-s_{v_i}}, zeroing the
/// v_i-coordinates; for points of [[W]] the resulting s_w is one of the
/// orbit representatives.
inline OrbitReduction orbit_reduce(const SetupPtr& setup, const LatticePoint& p) {
    const auto& d = setup->degrees;
    if (p.coords.size() != d.size() + 1) throw std::invalid_argument("lattice point length mismatch");
    OrbitReduction out;
    out.translation = QMonomial::identity(*setup);
    Int sw = p.coords[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        Int si = p.coords[i + 1];
        if (si < std::numeric_limits<long>::min() || si > std::numeric_limits<long>::max())
            throw std::domain_error("orbit_reduce: coordinate out of range");
        out.translation.exps[static_cast<std::size_t>(setup->basis_index(0, static_cast<long>(i)))] =
            -static_cast<long>(si);
        sw += Int(d[i]) * si;  // w(q) = sum d_i s_{v_i}
    }
    out.representative.coords.assign(d.size() + 1, Int{0});
    out.representative.coords[0] = sw;
    out.is_orbit_rep = sw >= 0 && sw < 1 + setup->sum_degrees();
    return out;
}

/// Result of the Chinese-remainder normalization. The final label a solves
/// the coset equalities [(a, s_v)] = [(a_v, s_v)] for every v in V; on the
/// internally reduced configuration (v_i-heights zero, w-label zero) it
/// satisfies v_i(a - a_{v_i}) >= 0 and w(a - a_w) > 0, with the interpolant
/// a' of degree < deg F^t.
struct CrtResult {
    Localized a;                         // label in the original coordinates
    Localized a_reduced;                 // label solving the reduced configuration
    std::vector<Localized> reduced_labels;
    std::vector<long> reduced_heights;
    long t = 0;                          // denominator-clearing exponent
    RatPoly a_prime;                     // CRT interpolant (coefficients in Z[1/k])
    long f_power_degree = 0;             // deg F^t
};

namespace detail {

/// Inverse of g modulo m over Q[x] (gcd must be 1).
inline RatPoly inverse_mod(const RatPoly& g, const RatPoly& m) {
    auto [d, u, v] = extended_gcd(g, m);
    if (d.degree() != 0) throw std::logic_error("inverse_mod: inputs not coprime");
    return divmod(u, m).second;
}

inline void require_k_smooth_denominators(const RatPoly& p, const Int& k) {
    for (const Rat& c : p.coeffs())
        if (denominator(c) != 1 && !is_k_smooth(denominator(c), k))
            throw std::logic_error(
                "CRT interpolant has a denominator prime not dividing k; "
                "this contradicts the validated coprimality hypothesis");
}

/// Z[1/k]-coefficient polynomial -> localized element.
inline Localized from_k_poly(const SetupPtr& setup, const RatPoly& p) {
    Int den{1};
    for (const Rat& c : p.coeffs()) den = den / int_gcd(den, denominator(c)) * denominator(c);
    std::vector<Int> scaled;
    scaled.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) scaled.push_back(numerator(c) * (den / denominator(c)));
    Localized num = Localized::from_poly(setup, Poly(std::move(scaled)));
    Localized d = Localized::integer(setup, den);
    return num * d.unit_inverse();
}

}  // namespace detail

/// Normalizes a tuple of labels over a lattice point of [[W]]: after the
/// built-in reduction (translate the v_i-heights to zero, the w-label to
/// zero; the reduced s_w must land in [0, -beta)), solves
///   a' = a_{v_i} F^t  mod f_i^t
/// over Z[x, 1/k] with F = f_0 ... f_n and returns a = a' F^{-t} pulled back
/// to the original coordinates.
inline CrtResult crt_normalize(const SetupPtr& setup, const std::vector<Localized>& labels,
                               const std::vector<long>& heights) {
    std::size_t nv = setup->degrees.size() + 1;  // |V|
    if (labels.size() != nv || heights.size() != nv)
        throw std::invalid_argument("crt_normalize: need one label and height per element of V");
    if (setup->block_count() != 1)
        throw std::invalid_argument("crt_normalize: single-block (cyclic) case only");

    CrtResult res;

    // Reduction 1: q-translate so the v_i-heights vanish.
    QMonomial q = QMonomial::identity(*setup);
    for (std::size_t i = 1; i < nv; ++i)
        q.exps[static_cast<std::size_t>(setup->basis_index(0, static_cast<long>(i - 1)))] = -heights[i];
    Localized u = monomial_image(q, setup);
    long sw = heights[0];
    for (std::size_t i = 1; i < nv; ++i) sw += setup->degrees[i - 1] * heights[i];
    if (sw < 0 || sw >= -setup->beta)
        throw std::domain_error("crt_normalize: reduced w-height " + std::to_string(sw) +
                                " outside [0, " + std::to_string(-setup->beta) + ")");
    std::vector<Localized> red;
    red.reserve(nv);
    for (const Localized& a : labels) red.push_back(a * u);
    // Reduction 2: A-translate so the w-label vanishes.
    Localized aw = red[0];
    for (Localized& a : red) a = a - aw;

    res.reduced_labels = red;
    res.reduced_heights.assign(nv, 0);
    res.reduced_heights[0] = sw;

    // Minimal t with F^t a_{v_i} polynomial over Z[x, 1/k].
    long t = 0;
    for (std::size_t i = 1; i < nv; ++i)
        for (long e : red[i].exps())
            if (-e > t) t = -e;
    res.t = t;

    const auto& fs = setup->fs();
    Poly F = Poly::constant(Int{1});
    for (const Poly& f : fs) F = F * f;
    Poly Ft = F.pow(static_cast<unsigned long>(t));
    res.f_power_degree = Ft.degree();

    Localized a_red = Localized::zero(setup);
    RatPoly a_prime;
    if (t > 0) {
        Localized Ft_loc = Localized::from_poly(setup, Ft);
        RatPoly Ft_rat = to_rat_poly(Ft);
        for (std::size_t i = 1; i < nv; ++i) {
            const Poly& fi = fs[i - 1];
            RatPoly fit = to_rat_poly(fi.pow(static_cast<unsigned long>(t)));
            RatPoly ri = (red[i] * Ft_loc).expand();  // a_{v_i} F^t, in Z[x,1/k]
            RatPoly gi = divmod(Ft_rat, fit).first;   // (F/f_i)^t, exact
            RatPoly inv = detail::inverse_mod(gi, fit);
            detail::require_k_smooth_denominators(inv, setup->k);
            RatPoly term = divmod(ri, fit).second * gi * inv;
            a_prime = divmod(a_prime + term, Ft_rat).second;
        }
        detail::require_k_smooth_denominators(a_prime, setup->k);
        // congruence check: f_i^t | a' - a_{v_i} F^t over Q[x]
        for (std::size_t i = 1; i < nv; ++i) {
            RatPoly fit = to_rat_poly(fs[i - 1].pow(static_cast<unsigned long>(t)));
            RatPoly ri = (red[i] * Ft_loc).expand();
            if (!divmod(a_prime - ri, fit).second.is_zero())
                throw std::logic_error("crt_normalize: congruence check failed");
        }
        if (a_prime.degree() >= Ft.degree())
            throw std::logic_error("crt_normalize: interpolant degree not reduced");
        a_red = detail::from_k_poly(setup, a_prime) * Ft_loc.unit_inverse();
    }
    res.a_prime = a_prime;
    res.a_reduced = a_red;

    // Postconditions on the reduced configuration.
    for (std::size_t i = 1; i < nv; ++i) {
        ValuationId vi = ValuationId::fadic(*setup, static_cast<long>(i - 1));
        if (!(valuation(vi, a_red - red[i]) >= ExtInt(0)))
            throw std::logic_error("crt_normalize: v_i postcondition failed");
    }
    if (!(valuation(ValuationId::degree(), a_red - red[0]) > ExtInt(0)))
        throw std::logic_error("crt_normalize: w postcondition failed");

    // Undo the reductions: aw is already the q-translated w-label.
    res.a = (a_red + aw) * u.unit_inverse();

    // Original-coordinate guarantee: coset equality at every v.
    std::vector<VEntry> V = standard_characters(setup);
    for (std::size_t i = 0; i < nv; ++i) {
        ExtInt val = valuation(V[i].valuation, res.a - labels[i]);
        if (!(val >= ExtInt(heights[i] + setup->beta)))
            throw std::logic_error("crt_normalize: coset equality failed after undo");
    }
    return res;
}

}  // namespace metafp
