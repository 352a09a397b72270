// Validated instance data: the integer k, the blocks of monic polynomials,
// and the derived quantities (degrees, beta, ranks) every other module
// consumes. Instances are immutable and shared by pointer.
#pragma once

#include "polynomial.hpp"

#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace metafp {

struct Block {
    std::vector<Poly> polys;  // [f_{i,0}, ..., f_{i,z_i}], f_{i,0} = x
    bool assert_irreducible = false;
};

struct RawSetup {
    Int k;
    std::vector<Block> blocks;
    long free_rank = 1;
};

class Setup {
public:
    Int k;
    std::vector<Block> blocks;
    long free_rank = 1;

    // Derived data for the designated (first) block.
    std::vector<long> degrees;  // d_0, ..., d_n
    long beta = 0;              // -(2 + sum d_i)
    long rank_q = 0;            // 1 + sum over blocks of (z_i + 1)
    long min_block_rank = 0;    // m = min rank(Q_i), i >= 1

    /// Number n of non-trivial generators in the designated block (z_1).
    long n() const { return static_cast<long>(blocks.front().polys.size()) - 1; }
    long block_count() const { return static_cast<long>(blocks.size()); }
    const std::vector<Poly>& fs() const { return blocks.front().polys; }
    long sum_degrees() const { return std::accumulate(degrees.begin(), degrees.end(), 0L); }

    /// Offset of generator j of block b (0-based) in the Q-basis
    /// (q_{-1} first, then block generators in order).
    long basis_index(long block, long j) const {
        long idx = 1;
        for (long b = 0; b < block; ++b) idx += static_cast<long>(blocks[static_cast<std::size_t>(b)].polys.size());
        return idx + j;
    }

    std::vector<std::string> basis_names() const {
        std::vector<std::string> names;
        names.push_back("q-1");
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t j = 0; j < blocks[b].polys.size(); ++j) {
                std::ostringstream os;
                if (b == 0) os << "q" << j;
                else os << "q" << (b + 1) << "_" << j;
                names.push_back(os.str());
            }
        return names;
    }

    friend bool operator==(const Setup& a, const Setup& b) {
        if (a.k != b.k || a.free_rank != b.free_rank || a.blocks.size() != b.blocks.size()) return false;
        for (std::size_t i = 0; i < a.blocks.size(); ++i)
            if (a.blocks[i].polys != b.blocks[i].polys) return false;
        return true;
    }
};

using SetupPtr = std::shared_ptr<const Setup>;

struct Violation {
    std::string code;     // stable identifier, e.g. "resultant-not-k-smooth"
    std::string detail;   // human-readable, names the polynomial or pair
};

struct ValidationResult {
    SetupPtr setup;  // null when invalid
    std::vector<Violation> violations;
    std::vector<std::string> notes;  // e.g. irreducibility accepted by assertion
    bool ok() const { return setup != nullptr; }
};

namespace detail {

/// Monic integer polynomial has an integer root iff it has a linear factor;
/// for degrees 2 and 3 that settles irreducibility over Z.
inline bool has_integer_root(const Poly& f) {
    Int a0 = f.coeff(0);
    if (a0 == 0) return true;  // root 0
    std::vector<Int> divisors;
    Int bound = abs(a0);
    for (Int d = 1; d * d <= bound; ++d) {
        if (bound % d == 0) {
            divisors.push_back(d);
            divisors.push_back(bound / d);
        }
    }
    for (const Int& d : divisors) {
        if (f.eval(Int(d)) == 0 || f.eval(Int(-d)) == 0) return true;
    }
    return false;
}

}  // namespace detail

/// Checks the instance hypotheses: k >= 2, every f monic non-constant with
/// f_{i,0} = x, irreducibility (exact for deg <= 3, asserted above), and
/// pairwise coprimality within each block via k-smooth resultants.
/// Returns the validated setup or the full list of violations.
inline ValidationResult validate_setup(const RawSetup& raw) {
    ValidationResult res;
    auto fail = [&res](std::string code, std::string detail) {
        res.violations.push_back({std::move(code), std::move(detail)});
    };

    if (raw.k < 2) fail("k-too-small", "k must be an integer >= 2, got " + raw.k.str());
    if (raw.free_rank < 1) fail("free-rank", "free rank must be >= 1");
    if (raw.blocks.empty()) fail("no-blocks", "at least one polynomial block is required");

    const Poly x = Poly::variable();
    for (std::size_t b = 0; b < raw.blocks.size(); ++b) {
        const Block& blk = raw.blocks[b];
        std::string where = "block " + std::to_string(b + 1);
        if (blk.polys.empty()) {
            fail("empty-block", where + " has no polynomials");
            continue;
        }
        if (blk.polys.front() != x)
            fail("first-poly-not-x", where + ": leading polynomial must be x, got " +
                                         blk.polys.front().str());
        for (std::size_t j = 0; j < blk.polys.size(); ++j) {
            const Poly& f = blk.polys[j];
            std::string name = where + ", f_" + std::to_string(j) + " = " + f.str();
            if (f.degree() < 1) {
                fail("constant-poly", name + " is constant");
                continue;
            }
            if (!f.is_monic()) fail("non-monic", name + " is not monic");
            if (f.degree() <= 3) {
                if (f.degree() >= 2 && detail::has_integer_root(f))
                    fail("reducible", name + " has a linear factor");
            } else {
                if (detail::has_integer_root(f)) {
                    fail("reducible", name + " has a linear factor");
                } else if (!blk.assert_irreducible) {
                    fail("irreducibility-unverified",
                         name + ": degree > 3 requires assert_irreducible in the setup file");
                } else {
                    res.notes.push_back(name + ": irreducibility accepted by assertion");
                }
            }
        }
        // pairwise coprimality in Z[x, 1/k]
        if (raw.k >= 2) {
            for (std::size_t i = 0; i < blk.polys.size(); ++i) {
                for (std::size_t j = i + 1; j < blk.polys.size(); ++j) {
                    const Poly &f = blk.polys[i], &g = blk.polys[j];
                    if (f.is_zero() || g.is_zero()) continue;
                    Int r = resultant(f, g);
                    std::string pair = "block " + std::to_string(b + 1) + ", (f_" + std::to_string(i) +
                                       ", f_" + std::to_string(j) + ") = (" + f.str() + ", " + g.str() + ")";
                    if (r == 0) {
                        fail("common-factor", pair + ": resultant is 0 (common factor)");
                    } else if (!is_k_smooth(r, raw.k)) {
                        fail("resultant-not-k-smooth",
                             pair + ": resultant " + r.str() + " has a prime factor not dividing k = " +
                                 raw.k.str());
                    }
                }
            }
        }
    }

    if (!res.violations.empty()) return res;

    auto s = std::make_shared<Setup>();
    s->k = raw.k;
    s->blocks = raw.blocks;
    s->free_rank = raw.free_rank;
    for (const Poly& f : s->blocks.front().polys) s->degrees.push_back(f.degree());
    s->beta = -(2 + s->sum_degrees());
    s->rank_q = 1;
    s->min_block_rank = 0;
    for (const Block& blk : s->blocks) {
        long rank = static_cast<long>(blk.polys.size());
        s->rank_q += rank;
        if (s->min_block_rank == 0 || rank < s->min_block_rank) s->min_block_rank = rank;
    }
    res.setup = std::move(s);
    return res;
}

/// The split-extension instance with k = n!, f_j = x + j for 0 <= j <= n.
inline SetupPtr factorial_setup(long n) {
    if (n < 1) throw std::invalid_argument("factorial_setup: n must be >= 1");
    RawSetup raw;
    Int fact{1};
    for (long i = 2; i <= n; ++i) fact *= i;
    raw.k = fact;
    if (n == 1) raw.k = 2;  // n! = 1 is excluded; the n = 1 instance uses k = 2
    Block blk;
    for (long j = 0; j <= n; ++j) blk.polys.push_back(Poly({Int(j), Int(1)}));
    raw.blocks.push_back(std::move(blk));
    auto res = validate_setup(raw);
    if (!res.ok()) throw std::logic_error("factorial_setup: instance failed validation");
    return res.setup;
}

}  // namespace metafp
