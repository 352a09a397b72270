// Character trees: vertices are cosets G(v) q_v^z a, stored as a height and
// a module label with coset equality decided by valuations. Finite balls are
// unions of the lines of explicitly given labels, merged where the lines
// agree; the tree itself is infinitely branching, so balls are always
// seed-relative.
#pragma once

#include "charspace.hpp"
#include "valuation.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace metafp {

struct TreeContext {
    SetupPtr setup;
    ValuationId v;
    Character chi;   // the induced character (integer-valued on the basis)
    QMonomial q_v;   // v(q_v) = 1
    long beta;       // fixed negative constant of the construction
};

/// Context for one of the standard characters: f-adic (q_v = q_i) or degree
/// (q_v = q_0^{-1}).
inline TreeContext make_tree_context(const SetupPtr& setup, const ValuationId& v) {
    if (v.kind == ValuationId::Kind::padic)
        throw std::invalid_argument("tree context: p-adic valuations carry no tree here");
    TreeContext ctx;
    ctx.setup = setup;
    ctx.v = v;
    ctx.chi = character_of(v, setup);
    if (v.kind == ValuationId::Kind::fadic)
        ctx.q_v = QMonomial::generator(*setup, setup->basis_index(0, v.index), 1);
    else
        ctx.q_v = QMonomial::generator(*setup, setup->basis_index(0, 0), -1);
    ctx.beta = setup->beta;
    return ctx;
}

/// Integer character value of a monomial.
inline long char_value(const TreeContext& ctx, const QMonomial& q) {
    Rat r = dot(ctx.chi, q);
    if (denominator(r) != 1) throw std::logic_error("char_value: non-integer value");
    return static_cast<long>(numerator(r));
}

struct TreeVertex {
    long z = 0;        // height h_v
    Localized label;   // the a in G(v) q_v^z a
};

/// Membership in the height shift of the base submodule:
/// { m : v(m) >= c }.
inline bool av_membership(const TreeContext& ctx, const Localized& e, long c) {
    return valuation(ctx.v, e) >= ExtInt(c);
}

/// Largest z at which the lines of a and b agree: val(a - b) - beta,
/// infinity iff the labels coincide.
inline ExtInt line_intersection_sup(const TreeContext& ctx, const Localized& a, const Localized& b) {
    ExtInt v = valuation(ctx.v, a - b);
    if (v.is_infinity()) return v;
    return ExtInt(v.value() - ctx.beta);
}

/// Coset equality: equal heights and val(a - b) >= z + beta.
inline bool vertex_equal(const TreeContext& ctx, const TreeVertex& p, const TreeVertex& q) {
    if (p.z != q.z) return false;
    return av_membership(ctx, p.label - q.label, p.z + ctx.beta);
}

/// Right action of g = (b, q): heights shift by v(q) and the label becomes
/// label o q + b (the unique action compatible with the composition law
/// (a,q)(b,p) = (a o p + b, qp)).
inline TreeVertex act_on_vertex(const TreeContext& ctx, const TreeVertex& vert, const GroupElement& g) {
    TreeVertex r;
    r.z = vert.z + char_value(ctx, g.q);
    r.label = module_action(vert.label, g.q) + g.a;
    return r;
}

struct TreeBall {
    struct Vertex {
        long z;
        std::vector<std::size_t> seeds;  // indices of seed lines through it
        Localized label;                 // representative (lowest seed index)
    };
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    bool is_tree() const {
        return !vertices.empty() && edges.size() + 1 == vertices.size() && connected();
    }
    bool connected() const {
        if (vertices.empty()) return false;
        std::vector<std::size_t> parent(vertices.size());
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto [a, b] : edges) parent[find(a)] = find(b);
        std::size_t root = find(0);
        for (std::size_t i = 1; i < parent.size(); ++i)
            if (find(i) != root) return false;
        return true;
    }
};

/// Union of the seed lines over the height window, vertices merged per the
/// intersection rule and consecutive heights joined within each line.
inline TreeBall tree_ball(const TreeContext& ctx, const std::vector<Localized>& seeds, long z_lo,
                          long z_hi) {
    TreeBall ball;
    if (seeds.empty() || z_lo > z_hi) return ball;
    std::size_t n = seeds.size();
    // z0[i][j]: the lines of seeds i and j agree exactly for z <= z0.
    std::vector<std::vector<ExtInt>> z0(n, std::vector<ExtInt>(n, ExtInt::infinity()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) z0[i][j] = z0[j][i] = line_intersection_sup(ctx, seeds[i], seeds[j]);

    std::map<std::pair<long, std::size_t>, std::size_t> vertex_id;  // (z, class rep) -> index
    std::vector<std::size_t> prev_class(n), cur_class(n);
    for (long z = z_lo; z <= z_hi; ++z) {
        // merge seeds whose lines agree at height z
        for (std::size_t i = 0; i < n; ++i) {
            cur_class[i] = i;
            for (std::size_t j = 0; j < i; ++j) {
                if (ExtInt(z) <= z0[i][j]) {
                    cur_class[i] = cur_class[j];
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (cur_class[i] != i) continue;
            std::pair<long, std::size_t> key{z, i};
            vertex_id[key] = ball.vertices.size();
            TreeBall::Vertex v;
            v.z = z;
            v.label = seeds[i];
            for (std::size_t j = 0; j < n; ++j)
                if (cur_class[j] == i) v.seeds.push_back(j);
            ball.vertices.push_back(std::move(v));
        }
        if (z > z_lo) {
            std::set<std::pair<std::size_t, std::size_t>> seen;
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t a = vertex_id[{z - 1, prev_class[i]}];
                std::size_t b = vertex_id[{z, cur_class[i]}];
                if (seen.insert({a, b}).second) ball.edges.push_back({a, b});
            }
        }
        prev_class = cur_class;
    }
    return ball;
}

}  // namespace metafp
