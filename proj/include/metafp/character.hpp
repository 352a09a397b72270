// Characters of Q as exact rational vectors on the fixed basis
// (q_{-1}, q_{1,0}, ..., q_{1,n}, blocks 2..l). Classes are rays under
// positive scaling.
#pragma once

#include "localized.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace metafp {

using Character = std::vector<Rat>;

inline bool is_zero_vector(const Character& c) {
    for (const Rat& x : c)
        if (x != 0) return false;
    return true;
}

inline Rat dot(const Character& c, const QMonomial& q) {
    if (c.size() != q.exps.size()) throw std::invalid_argument("character/monomial rank mismatch");
    Rat s{0};
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * Rat(q.exps[i]);
    return s;
}

inline Rat dot(const Character& a, const Character& b) {
    if (a.size() != b.size()) throw std::invalid_argument("character rank mismatch");
    Rat s{0};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Character add(const Character& a, const Character& b) {
    if (a.size() != b.size()) throw std::invalid_argument("character rank mismatch");
    Character r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Character scale(const Rat& s, const Character& a) {
    Character r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// Unique representative of the ray [c]: integer coordinates with gcd 1.
inline Character primitive(const Character& c) {
    Int l{1};
    for (const Rat& x : c) l = l / int_gcd(l, denominator(x)) * denominator(x);
    Int g{0};
    std::vector<Int> scaled(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        scaled[i] = numerator(c[i]) * (l / denominator(c[i]));
        g = int_gcd(g, scaled[i]);
    }
    Character r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = g == 0 ? Rat{0} : Rat(scaled[i] / g);
    return r;
}

inline std::string character_str(const Character& c) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << ")";
    return os.str();
}

}  // namespace metafp
