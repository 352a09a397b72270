// Sigma-membership evidence. A witness is an integer combination of
// Q-monomials, all with strictly positive character value, whose image sum
// in the localized ring is exactly 1: by the centralizer criterion its
// existence certifies [v] in Sigma_A. Absence within bounds proves nothing
// (the check is one-sided).
//
// Search: monomials of the exponent box are enumerated in graded
// lexicographic order; their images, cleared to a common denominator, feed
// an incremental integer lattice. The first step at which 1 enters the
// lattice yields a witness supported on the monomials seen so far (small
// supports are recovered by bounded subset solving). Exhausting the box
// without 1 entering rules out every witness over the box, regardless of
// support size.
#pragma once

#include "charspace.hpp"
#include "linear.hpp"
#include "localized.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace metafp {

struct SearchBounds {
    long support = 4;  // maximum support size tried for small witnesses
    long exp_box = 6;  // exponent box [-exp_box, exp_box] per generator
};

struct Witness {
    std::vector<std::pair<Int, QMonomial>> terms;

    Localized image_sum(const SetupPtr& setup) const {
        Localized s = Localized::zero(setup);
        for (const auto& [c, q] : terms) s = s + c * monomial_image(q, setup);
        return s;
    }
    std::string str(const Setup& setup) const {
        std::ostringstream os;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto& [c, q] = terms[i];
            if (i) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            Int mag = c < 0 ? Int(-c) : c;
            if (mag != 1) os << mag.str() << "*";
            os << q.str(setup);
        }
        return os.str();
    }
};

struct SigmaVerdict {
    enum class Kind { in_sigma, no_witness_within_bounds };
    Kind kind = Kind::no_witness_within_bounds;
    std::optional<Witness> witness;
    SearchBounds bounds;

    bool in_sigma() const { return kind == Kind::in_sigma; }
};

/// Monomial images over the exponent box, cleared to the common denominator
/// k^B (f_0 ... f_n)^B. Built once per (setup, box) and shared across
/// character classes.
class WitnessSearchTable {
public:
    WitnessSearchTable(SetupPtr setup, long exp_box) : setup_(std::move(setup)), box_(exp_box) {
        if (setup_->block_count() != 1)
            throw std::invalid_argument("witness search requires a single-block setup");
        if (exp_box < 1) throw std::invalid_argument("exponent box must be >= 1");
        const auto& fs = setup_->fs();
        // power tables f_i^j for j in [0, 2B]
        std::vector<std::vector<Poly>> pows(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) {
            pows[i].push_back(Poly::constant(Int{1}));
            for (long j = 1; j <= 2 * box_; ++j) pows[i].push_back(pows[i].back() * fs[i]);
        }
        dim_ = static_cast<std::size_t>(2 * box_ * setup_->sum_degrees()) + 1;

        std::vector<QMonomial> all;
        QMonomial cur = QMonomial::identity(*setup_);
        enumerate(cur, 0, all);
        std::sort(all.begin(), all.end(), [](const QMonomial& a, const QMonomial& b) {
            long wa = a.weight(), wb = b.weight();
            if (wa != wb) return wa < wb;
            return a.exps < b.exps;
        });
        monomials_ = std::move(all);

        vectors_.reserve(monomials_.size());
        for (const QMonomial& q : monomials_) {
            Poly p = Poly::constant(int_pow(setup_->k, static_cast<unsigned long>(q.exps[0] + box_)));
            for (std::size_t i = 0; i < fs.size(); ++i)
                p = p * pows[i][static_cast<std::size_t>(q.exps[1 + i] + box_)];
            vectors_.push_back(to_vector(p));
        }
        Poly one = Poly::constant(int_pow(setup_->k, static_cast<unsigned long>(box_)));
        for (std::size_t i = 0; i < fs.size(); ++i)
            one = one * pows[i][static_cast<std::size_t>(box_)];
        target_ = to_vector(one);
    }

    const SetupPtr& setup() const { return setup_; }
    long exp_box() const { return box_; }
    const std::vector<QMonomial>& monomials() const { return monomials_; }
    const std::vector<std::vector<Int>>& vectors() const { return vectors_; }
    const std::vector<Int>& target() const { return target_; }
    std::size_t dim() const { return dim_; }

private:
    void enumerate(QMonomial& cur, std::size_t pos, std::vector<QMonomial>& out) const {
        if (pos == cur.exps.size()) {
            if (!cur.is_identity()) out.push_back(cur);
            return;
        }
        for (long e = -box_; e <= box_; ++e) {
            cur.exps[pos] = e;
            enumerate(cur, pos + 1, out);
        }
        cur.exps[pos] = 0;
    }
    std::vector<Int> to_vector(const Poly& p) const {
        std::vector<Int> v(dim_, Int{0});
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
        return v;
    }

    SetupPtr setup_;
    long box_;
    std::size_t dim_ = 0;
    std::vector<QMonomial> monomials_;
    std::vector<std::vector<Int>> vectors_;
    std::vector<Int> target_;
};

namespace detail {

inline void validate_witness(const Witness& w, const SetupPtr& setup, const Character& chi) {
    if (!w.image_sum(setup).is_one())
        throw std::logic_error("witness validation failed: image sum is not 1");
    for (const auto& [c, q] : w.terms) {
        if (c == 0) throw std::logic_error("witness validation failed: zero coefficient");
        if (dot(chi, q) <= 0)
            throw std::logic_error("witness validation failed: support monomial not v-positive");
    }
}

}  // namespace detail

/// Searches for a centralizer witness for the (nonzero, rational) character
/// chi using a prebuilt table. Deterministic.
inline SigmaVerdict search_with_table(const WitnessSearchTable& table, const Character& chi,
                                      const SearchBounds& bounds) {
    const SetupPtr& setup = table.setup();
    if (chi.size() != static_cast<std::size_t>(setup->rank_q))
        throw std::invalid_argument("character rank mismatch");
    if (is_zero_vector(chi)) throw std::invalid_argument("zero character");

    std::vector<std::size_t> pool;  // indices of monomials with chi(q) > 0
    for (std::size_t i = 0; i < table.monomials().size(); ++i)
        if (dot(chi, table.monomials()[i]) > 0) pool.push_back(i);

    SigmaVerdict verdict;
    verdict.bounds = bounds;

    IntLattice lattice(table.dim());
    bool last_check_failed = false;
    std::size_t hit = pool.size();
    for (std::size_t step = 0; step < pool.size(); ++step) {
        bool changed = lattice.insert(table.vectors()[pool[step]]);
        if (changed) last_check_failed = false;
        if (last_check_failed) continue;
        if (lattice.contains(table.target())) {
            hit = step;
            break;
        }
        last_check_failed = true;
    }
    if (hit == pool.size()) {
        verdict.kind = SigmaVerdict::Kind::no_witness_within_bounds;
        return verdict;
    }

    // Small-support recovery: any witness over monomials seen before the hit
    // would have ended the scan earlier, so the last monomial belongs to
    // every minimal witness at this step. Try subsets containing it.
    auto make_witness = [&](const std::vector<std::size_t>& idx, const std::vector<Int>& coeffs) {
        Witness w;
        for (std::size_t j = 0; j < idx.size(); ++j)
            if (coeffs[j] != 0) w.terms.push_back({coeffs[j], table.monomials()[pool[idx[j]]]});
        detail::validate_witness(w, setup, chi);
        verdict.kind = SigmaVerdict::Kind::in_sigma;
        verdict.witness = std::move(w);
    };

    for (long s = 1; s <= bounds.support && !verdict.witness; ++s) {
        // combinations of size s-1 from [0, hit), each extended by hit itself
        std::size_t r = static_cast<std::size_t>(s) - 1;
        if (r > hit) break;
        std::vector<std::size_t> comb(r);
        for (std::size_t j = 0; j < r; ++j) comb[j] = j;
        while (true) {
            std::vector<std::size_t> idx(comb);
            idx.push_back(hit);
            std::vector<std::vector<Int>> cols;
            for (std::size_t i : idx) cols.push_back(table.vectors()[pool[i]]);
            auto sol = solve_integer_combination(cols, table.target());
            if (sol) {
                make_witness(idx, *sol);
                break;
            }
            if (r == 0) break;
            std::size_t i = r;
            while (i > 0 && comb[i - 1] == hit - r + (i - 1)) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < r; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (!verdict.witness) {
        // Fall back to the full expression over everything seen so far (the
        // support may exceed the bound; it is still a valid certificate).
        std::vector<std::vector<Int>> cols;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i <= hit; ++i) {
            idx.push_back(i);
            cols.push_back(table.vectors()[pool[i]]);
        }
        auto sol = solve_integer_combination(cols, table.target());
        if (!sol) throw std::logic_error("witness extraction failed after lattice hit");
        make_witness(idx, *sol);
    }
    return verdict;
}

/// One-shot search (builds the table internally).
inline SigmaVerdict search_centralizer_witness(const SetupPtr& setup, const Character& chi,
                                               const SearchBounds& bounds = {}) {
    WitnessSearchTable table(setup, bounds.exp_box);
    return search_with_table(table, chi, bounds);
}

/// The classified complement family on the basis characters
/// v_{-1}, v_0, ..., v_n, w. Only the two-generator designated-block
/// instance (n = 2) is supported; other n are rejected.
inline ConeFamily sigma_complement_family(long n) {
    if (n != 2)
        throw std::invalid_argument(
            "sigma complement family: only n = 2 is supported (supported instances: n = 2)");
    auto basis = [](int i) {
        Character c(4, Rat{0});
        c[static_cast<std::size_t>(i)] = 1;
        return c;
    };
    Character vm1 = basis(0), v0 = basis(1), v1 = basis(2), v2 = basis(3);
    Character w = {Rat{0}, Rat{-1}, Rat{-1}, Rat{-1}};

    ConeFamily fam;
    fam.cones.push_back(ray_cone("[v-1]", vm1));
    fam.cones.push_back(ray_cone("[v0]", v0));
    fam.cones.push_back(ray_cone("[v1]", v1));
    fam.cones.push_back(ray_cone("[v2]", v2));
    fam.cones.push_back(ray_cone("[w]", w));

    auto cone2 = [](std::string name, Character g1, Character g2,
                    std::vector<CoeffConstraint> cc) {
        Cone c;
        c.name = std::move(name);
        c.generators = {std::move(g1), std::move(g2)};
        c.constraints = std::move(cc);
        return c;
    };
    const Rat one{1}, zero{0};
    // k_{-1} v_{-1} + k_1 v_1, k_{-1}, k_1 > 0
    fam.cones.push_back(cone2("k(-1)*v-1 + k1*v1", vm1, v1,
                              {{{one, zero}, true}, {{zero, one}, true}}));
    // k_{-1} (v_{-1} + v_0) + k_2 v_2, k_2 >= k_{-1} > 0
    fam.cones.push_back(cone2("k(-1)*(v-1+v0) + k2*v2", add(vm1, v0), v2,
                              {{{one, zero}, true}, {{Rat{-1}, one}, false}}));
    // k_{-1} (v_{-1} + v_2) + k_0 v_0, k_0 >= k_{-1} > 0
    fam.cones.push_back(cone2("k(-1)*(v-1+v2) + k0*v0", add(vm1, v2), v0,
                              {{{one, zero}, true}, {{Rat{-1}, one}, false}}));
    // k_{-1} v_{-1} + k_0 (v_0 + v_2), k_{-1} >= k_0 > 0
    fam.cones.push_back(cone2("k(-1)*v-1 + k0*(v0+v2)", vm1, add(v0, v2),
                              {{{zero, one}, true}, {{one, Rat{-1}}, false}}));
    // k_{-1} v_{-1} + k w, k_{-1}, k > 0
    fam.cones.push_back(cone2("k(-1)*v-1 + k*w", vm1, w,
                              {{{one, zero}, true}, {{zero, one}, true}}));
    return fam;
}

struct VerifyRow {
    Character chi;            // primitive representative
    bool in_family = false;   // class lies in the declared complement
    SigmaVerdict verdict;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    /// Classes declared in the complement for which a witness was found:
    /// a hard consistency failure.
    std::vector<std::size_t> hard_anomalies;
    /// Classes outside the declared complement with no witness within
    /// bounds: inconclusive, reported for inspection.
    std::vector<std::size_t> soft_anomalies;
    bool consistent() const { return hard_anomalies.empty(); }
    bool clean() const { return hard_anomalies.empty() && soft_anomalies.empty(); }
};

/// Rational grid of character classes with coordinates in {-2,...,2}:
/// the full {-1,0,1}^4 shell plus hand-picked points with a +-2 coordinate
/// probing each cone's interior and just outside its boundary. Deduplicated
/// by primitive representative.
inline std::vector<Character> verification_grid() {
    std::vector<Character> pts;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
                for (int d = -1; d <= 1; ++d) {
                    if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                    pts.push_back({Rat{a}, Rat{b}, Rat{c}, Rat{d}});
                }
    const int extra[][4] = {
        {2, 0, 1, 0},  {1, 0, 2, 0},  {1, 1, 0, 2},  {1, 2, 0, 1},   {2, 1, 0, 1},
        {2, -1, -1, -1}, {1, -2, -2, -2}, {2, 2, 0, 1}, {1, 2, 0, 2}, {2, 1, 0, 2},
        {1, 0, 1, 2},  {2, 0, 2, 1},  {1, 1, 2, 0},  {0, 1, 2, 0},   {0, 2, 1, 0},
        {0, 1, 0, 2},  {2, 0, 0, 1},  {1, 0, 0, 2},  {0, 2, 1, 1},   {-2, 1, 1, 1},
        {-1, 2, 0, 0}, {2, -1, 0, 1}, {1, -1, 1, 0}, {0, 1, 1, 2},   {2, 2, 1, 0},
    };
    for (const auto& e : extra) pts.push_back({Rat{e[0]}, Rat{e[1]}, Rat{e[2]}, Rat{e[3]}});
    std::vector<Character> out;
    for (const Character& p : pts) {
        Character prim = primitive(p);
        if (std::find(out.begin(), out.end(), prim) == out.end()) out.push_back(prim);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Cross-validates the declared complement against the witness search on a
/// grid of classes. Requires the n = 2 instance.
inline VerifyReport verify_sigma_complement(const SetupPtr& setup,
                                            const SearchBounds& bounds = {},
                                            std::vector<Character> grid = {}) {
    if (setup->block_count() != 1 || setup->n() != 2)
        throw std::invalid_argument("verification is defined for the n = 2 instance");
    ConeFamily family = sigma_complement_family(2);
    if (grid.empty()) grid = verification_grid();
    WitnessSearchTable table(setup, bounds.exp_box);
    VerifyReport report;
    for (const Character& chi : grid) {
        VerifyRow row;
        row.chi = chi;
        row.in_family = family_contains(family, chi);
        row.verdict = search_with_table(table, chi, bounds);
        std::size_t idx = report.rows.size();
        if (row.in_family && row.verdict.in_sigma()) report.hard_anomalies.push_back(idx);
        if (!row.in_family && !row.verdict.in_sigma()) report.soft_anomalies.push_back(idx);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace metafp
