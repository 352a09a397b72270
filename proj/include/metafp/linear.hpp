// Exact rational linear feasibility (Fourier-Motzkin with strict/non-strict
// bookkeeping and witness reconstruction by back-substitution) and integer
// lattice utilities (echelon bases of sublattices of Z^d, Diophantine
// membership with expression recovery).
#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace metafp {

/// a . x  (>= | >)  b
struct Constraint {
    std::vector<Rat> a;
    Rat b;
    bool strict = false;
};

struct Equation {
    std::vector<Rat> a;
    Rat b;
};

class LinearFeasibility {
public:
    explicit LinearFeasibility(std::size_t nvars) : nvars_(nvars) {}

    void add_ge(std::vector<Rat> a, Rat b, bool strict) {
        check(a);
        ineqs_.push_back({std::move(a), std::move(b), strict});
    }
    void add_eq(std::vector<Rat> a, Rat b) {
        check(a);
        eqs_.push_back({std::move(a), std::move(b)});
    }

    /// A feasible point, or nullopt. Deterministic: free coordinates default
    /// to 0, one-sided bounds step inward by 1, two-sided bounds pick the
    /// midpoint.
    std::optional<std::vector<Rat>> solve() const {
        // Stage 1: Gaussian elimination of the equations.
        std::vector<Equation> eqs = eqs_;
        std::vector<std::pair<std::size_t, Equation>> pivots;  // var -> solved row
        std::vector<bool> is_pivot(nvars_, false);
        for (auto& eq : eqs) {
            for (const auto& [pv, prow] : pivots) eliminate(eq.a, eq.b, pv, prow);
            std::size_t pv = nvars_;
            for (std::size_t j = 0; j < nvars_; ++j)
                if (eq.a[j] != 0) {
                    pv = j;
                    break;
                }
            if (pv == nvars_) {
                if (eq.b != 0) return std::nullopt;  // 0 = nonzero
                continue;
            }
            Rat lead = eq.a[pv];
            for (auto& c : eq.a) c /= lead;
            eq.b /= lead;
            for (auto& [v2, row2] : pivots) eliminate(row2.a, row2.b, pv, eq);
            is_pivot[pv] = true;
            pivots.emplace_back(pv, eq);
        }

        std::vector<std::size_t> free_vars;
        for (std::size_t j = 0; j < nvars_; ++j)
            if (!is_pivot[j]) free_vars.push_back(j);

        // Stage 2: substitute the pivots into the inequalities, compressing
        // to the free variables.
        std::vector<Constraint> work;
        for (const Constraint& c : ineqs_) {
            std::vector<Rat> a = c.a;
            Rat b = c.b;
            for (const auto& [pv, prow] : pivots) eliminate(a, b, pv, prow);
            Constraint cc;
            cc.a.resize(free_vars.size());
            for (std::size_t j = 0; j < free_vars.size(); ++j) cc.a[j] = a[free_vars[j]];
            cc.b = b;
            cc.strict = c.strict;
            work.push_back(std::move(cc));
        }

        // Stage 3: Fourier-Motzkin, eliminating the last free variable first.
        std::vector<Level> levels;
        for (std::size_t remaining = free_vars.size(); remaining > 0; --remaining) {
            std::size_t k = remaining - 1;
            Level level;
            std::vector<Constraint> lower, upper, rest;
            for (Constraint& c : work) {
                const Rat& coef = c.a[k];
                if (coef > 0) lower.push_back(std::move(c));       // x_k >= (b - rest)/coef
                else if (coef < 0) upper.push_back(std::move(c));  // x_k <= ...
                else rest.push_back(std::move(c));
            }
            level.lower = lower;
            level.upper = upper;
            level.var = k;
            levels.push_back(level);
            std::map<std::vector<Rat>, std::pair<Rat, bool>> best;  // normalized row -> (b, strict)
            auto add = [&](std::vector<Rat> a, Rat b, bool strict) {
                a.resize(k);  // coefficient of x_k is zero by construction
                normalize_row(a, b);
                auto it = best.find(a);
                if (it == best.end()) {
                    best.emplace(std::move(a), std::make_pair(std::move(b), strict));
                } else if (b > it->second.first) {
                    it->second.first = std::move(b);
                    it->second.second = strict;
                } else if (b == it->second.first) {
                    it->second.second = it->second.second || strict;
                }
            };
            for (Constraint& c : rest) {
                std::vector<Rat> a = std::move(c.a);
                add(std::move(a), std::move(c.b), c.strict);
            }
            for (const Constraint& lo : lower)
                for (const Constraint& up : upper) {
                    // lo: coef_l x_k + ... >= b_l (coef_l > 0); up: coef_u x_k + ... >= b_u (coef_u < 0)
                    // combine with weights -coef_u and coef_l to cancel x_k.
                    Rat wl = -up.a[k], wu = lo.a[k];
                    std::vector<Rat> a(k + 1, Rat{0});
                    for (std::size_t j = 0; j <= k; ++j) a[j] = wl * lo.a[j] + wu * up.a[j];
                    add(std::move(a), wl * lo.b + wu * up.b, lo.strict || up.strict);
                }
            work.clear();
            for (auto& [a, pb] : best) {
                Constraint c;
                c.a = a;
                c.a.resize(k, Rat{0});
                c.b = pb.first;
                c.strict = pb.second;
                work.push_back(std::move(c));
            }
        }

        // Stage 4: constant rows 0 >= b / 0 > b.
        for (const Constraint& c : work) {
            if (c.strict ? !(0 > c.b) : !(0 >= c.b)) return std::nullopt;
        }

        // Stage 5: back-substitute the free variables, innermost level last.
        std::vector<Rat> free_val(free_vars.size(), Rat{0});
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            const Level& level = *it;
            std::optional<Rat> lo, hi;
            bool lo_strict = false, hi_strict = false;
            auto bound = [&](const Constraint& c) {
                Rat rhs = c.b;
                for (std::size_t j = 0; j < level.var; ++j) rhs -= c.a[j] * free_val[j];
                return rhs / c.a[level.var];
            };
            for (const Constraint& c : level.lower) {
                Rat v = bound(c);
                if (!lo || v > *lo || (v == *lo && c.strict)) {
                    lo_strict = (!lo || v > *lo) ? c.strict : (lo_strict || c.strict);
                    lo = v;
                }
            }
            for (const Constraint& c : level.upper) {
                Rat v = bound(c);
                if (!hi || v < *hi || (v == *hi && c.strict)) {
                    hi_strict = (!hi || v < *hi) ? c.strict : (hi_strict || c.strict);
                    hi = v;
                }
            }
            Rat chosen{0};
            if (lo && hi) {
                if (*lo > *hi) return std::nullopt;  // should not happen after FM
                if (*lo == *hi) {
                    if (lo_strict || hi_strict) return std::nullopt;
                    chosen = *lo;
                } else {
                    chosen = (*lo + *hi) / 2;
                }
            } else if (lo) {
                chosen = lo_strict ? *lo + 1 : *lo;
            } else if (hi) {
                chosen = hi_strict ? *hi - 1 : *hi;
            }
            free_val[level.var] = chosen;
        }

        // Stage 6: recover the pivot variables.
        std::vector<Rat> x(nvars_, Rat{0});
        for (std::size_t j = 0; j < free_vars.size(); ++j) x[free_vars[j]] = free_val[j];
        for (const auto& [pv, prow] : pivots) {
            Rat v = prow.b;
            for (std::size_t j = 0; j < nvars_; ++j)
                if (j != pv) v -= prow.a[j] * x[j];
            x[pv] = v;
        }
        return x;
    }

    bool feasible() const { return solve().has_value(); }

private:
    struct Level {
        std::size_t var = 0;
        std::vector<Constraint> lower, upper;
    };

    void check(const std::vector<Rat>& a) const {
        if (a.size() != nvars_) throw std::invalid_argument("constraint arity mismatch");
    }

    /// Subtract coeff(var) times the solved pivot row.
    static void eliminate(std::vector<Rat>& a, Rat& b, std::size_t pv, const Equation& prow) {
        Rat c = a[pv];
        if (c == 0) return;
        for (std::size_t j = 0; j < a.size(); ++j) a[j] -= c * prow.a[j];
        b -= c * prow.b;
    }

    /// Scale so the entries are integers with gcd 1 (sign preserved).
    static void normalize_row(std::vector<Rat>& a, Rat& b) {
        Int l{1};
        auto fold = [&l](const Rat& x) { l = l / int_gcd(l, denominator(x)) * denominator(x); };
        for (const Rat& x : a) fold(x);
        fold(b);
        Int g{0};
        for (const Rat& x : a) g = int_gcd(g, numerator(x) * (l / denominator(x)));
        g = int_gcd(g, numerator(b) * (l / denominator(b)));
        if (g == 0) return;
        Rat s = Rat(l) / Rat(g);
        for (Rat& x : a) x *= s;
        b *= s;
    }

    std::size_t nvars_;
    std::vector<Constraint> ineqs_;
    std::vector<Equation> eqs_;
};

inline void extended_gcd_int(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int r0 = a, r1 = b, s0{1}, s1{0}, t0{0}, t1{1};
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = r0; s = s0; t = t0;
}

/// Echelon basis (pivot columns increasing, pivots positive, entries above a
/// pivot reduced) of the sublattice of Z^dim generated by inserted vectors.
class IntLattice {
public:
    explicit IntLattice(std::size_t dim) : dim_(dim) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

    /// Adds v to the generating set; returns true when the lattice grew.
    bool insert(std::vector<Int> v) {
        bool changed = false;
        for (std::size_t col = 0; col < dim_; ++col) {
            if (v[col] == 0) continue;
            std::size_t r = row_with_pivot(col);
            if (r == rows_.size()) {
                if (v[col] < 0)
                    for (auto& x : v) x = -x;
                rows_.insert(rows_.begin() + insert_pos(col), {col, std::move(v)});
                reduce_above();
                return true;
            }
            Row& row = rows_[r];
            if (v[col] % row.v[col] == 0) {
                sub_mult(v, row.v, v[col] / row.v[col]);
            } else {
                Int g, s, t;
                extended_gcd_int(row.v[col], v[col], g, s, t);
                Int rc = row.v[col] / g, vc = v[col] / g;
                std::vector<Int> comb(dim_), rest(dim_);
                for (std::size_t j = 0; j < dim_; ++j) {
                    comb[j] = s * row.v[j] + t * v[j];
                    rest[j] = rc * v[j] - vc * row.v[j];
                }
                row.v = std::move(comb);
                v = std::move(rest);
                changed = true;
            }
        }
        if (changed) reduce_above();
        return changed;
    }

    bool contains(std::vector<Int> v) const {
        for (std::size_t col = 0; col < dim_; ++col) {
            if (v[col] == 0) continue;
            std::size_t r = row_with_pivot(col);
            if (r == rows_.size()) return false;
            const Row& row = rows_[r];
            if (v[col] % row.v[col] != 0) return false;
            sub_mult(v, row.v, v[col] / row.v[col]);
        }
        return true;
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<Int> v;
    };

    std::size_t row_with_pivot(std::size_t col) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].pivot == col) return i;
        return rows_.size();
    }
    std::size_t insert_pos(std::size_t col) const {
        std::size_t i = 0;
        while (i < rows_.size() && rows_[i].pivot < col) ++i;
        return i;
    }
    static void sub_mult(std::vector<Int>& v, const std::vector<Int>& w, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * w[j];
    }
    /// Keeps entries above each pivot in [0, pivot).
    void reduce_above() {
        for (std::size_t i = rows_.size(); i-- > 0;) {
            for (std::size_t r = 0; r < i; ++r) {
                Int& e = rows_[r].v[rows_[i].pivot];
                const Int& p = rows_[i].v[rows_[i].pivot];
                Int q = e / p;
                if (e - q * p < 0) --q;  // floor division
                sub_mult(rows_[r].v, rows_[i].v, q);
            }
        }
    }

    std::size_t dim_;
    std::vector<Row> rows_;  // sorted by pivot column
};

/// Integer coefficients c with sum_j c_j cols[j] = target, or nullopt.
/// Deterministic; the result is the particular solution produced by the
/// echelon reduction (no minimization).
inline std::optional<std::vector<Int>> solve_integer_combination(
    const std::vector<std::vector<Int>>& cols, const std::vector<Int>& target) {
    if (cols.empty()) return std::nullopt;
    const std::size_t dim = target.size();
    const std::size_t s = cols.size();
    struct Row {
        std::size_t pivot;
        std::vector<Int> v;
        std::vector<Int> expr;
    };
    std::vector<Row> rows;
    auto row_with_pivot = [&](std::size_t col) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].pivot == col) return i;
        return rows.size();
    };
    for (std::size_t gi = 0; gi < s; ++gi) {
        std::vector<Int> v = cols[gi];
        if (v.size() != dim) throw std::invalid_argument("solve_integer_combination: dim mismatch");
        std::vector<Int> expr(s, Int{0});
        expr[gi] = 1;
        for (std::size_t col = 0; col < dim; ++col) {
            if (v[col] == 0) continue;
            std::size_t r = row_with_pivot(col);
            if (r == rows.size()) {
                if (v[col] < 0) {
                    for (auto& x : v) x = -x;
                    for (auto& x : expr) x = -x;
                }
                std::size_t pos = 0;
                while (pos < rows.size() && rows[pos].pivot < col) ++pos;
                rows.insert(rows.begin() + pos, {col, std::move(v), std::move(expr)});
                v.clear();
                break;
            }
            Row& row = rows[r];
            if (v[col] % row.v[col] == 0) {
                Int q = v[col] / row.v[col];
                for (std::size_t j = 0; j < dim; ++j) v[j] -= q * row.v[j];
                for (std::size_t j = 0; j < s; ++j) expr[j] -= q * row.expr[j];
            } else {
                Int g, a, b;
                extended_gcd_int(row.v[col], v[col], g, a, b);
                Int rc = row.v[col] / g, vc = v[col] / g;
                std::vector<Int> comb(dim), rest(dim), comb_e(s), rest_e(s);
                for (std::size_t j = 0; j < dim; ++j) {
                    comb[j] = a * row.v[j] + b * v[j];
                    rest[j] = rc * v[j] - vc * row.v[j];
                }
                for (std::size_t j = 0; j < s; ++j) {
                    comb_e[j] = a * row.expr[j] + b * expr[j];
                    rest_e[j] = rc * expr[j] - vc * row.expr[j];
                }
                row.v = std::move(comb);
                row.expr = std::move(comb_e);
                v = std::move(rest);
                expr = std::move(rest_e);
            }
        }
    }
    std::vector<Int> t = target;
    std::vector<Int> coeffs(s, Int{0});
    for (std::size_t col = 0; col < dim; ++col) {
        if (t[col] == 0) continue;
        std::size_t r = row_with_pivot(col);
        if (r == rows.size()) return std::nullopt;
        const Row& row = rows[r];
        if (t[col] % row.v[col] != 0) return std::nullopt;
        Int q = t[col] / row.v[col];
        for (std::size_t j = 0; j < dim; ++j) t[j] -= q * row.v[j];
        for (std::size_t j = 0; j < s; ++j) coeffs[j] += q * row.expr[j];
    }
    return coeffs;
}

}  // namespace metafp
