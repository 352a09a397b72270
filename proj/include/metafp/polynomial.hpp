// Dense univariate polynomials with exact integer and rational coefficients.
// Coefficients are stored ascending by degree; the zero polynomial is the
// empty sequence and a nonempty sequence has nonzero leading coefficient.
#pragma once

#include "numeric.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metafp {

template <typename T>
class BasicPoly {
public:
    BasicPoly() = default;
    explicit BasicPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static BasicPoly constant(T v) {
        BasicPoly p;
        if (v != 0) p.c_.push_back(std::move(v));
        return p;
    }
    /// The monomial c*x^d.
    static BasicPoly monomial(T coeff, std::size_t d) {
        BasicPoly p;
        if (coeff != 0) {
            p.c_.assign(d + 1, T{0});
            p.c_[d] = std::move(coeff);
        }
        return p;
    }
    static BasicPoly variable() { return monomial(T{1}, 1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree, with deg 0 for constants; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{0}; }
    const T& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }
    friend bool operator<(const BasicPoly& a, const BasicPoly& b) { return a.c_ < b.c_; }

    friend BasicPoly operator-(const BasicPoly& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = -x;
        return BasicPoly(std::move(r));
    }
    friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T{0});
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] += b.c_[i];
        }
        return BasicPoly(std::move(r));
    }
    friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return a + (-b); }
    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T{0});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return BasicPoly(std::move(r));
    }
    friend BasicPoly operator*(const T& s, const BasicPoly& a) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x *= s;
        return BasicPoly(std::move(r));
    }

    BasicPoly pow(unsigned long e) const {
        BasicPoly r = constant(T{1}), b = *this;
        while (e != 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    template <typename U>
    U eval(const U& x) const {
        U acc{0};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long d = degree(); d >= 0; --d) {
            const T& a = c_[static_cast<std::size_t>(d)];
            if (a == 0) continue;
            if (!first) os << (a < 0 ? " - " : " + ");
            else if (a < 0) os << "-";
            T mag = a < 0 ? T(-a) : a;
            if (mag != 1 || d == 0) os << mag;
            if (d >= 1) os << var;
            if (d >= 2) os << "^" << d;
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using Poly = BasicPoly<Int>;
using RatPoly = BasicPoly<Rat>;

inline RatPoly to_rat_poly(const Poly& p) {
    std::vector<Rat> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.emplace_back(a);
    return RatPoly(std::move(c));
}

/// Quotient and remainder over the rationals; divisor nonzero.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    long db = b.degree();
    long dq = a.degree() - db;
    if (dq < 0) return {RatPoly{}, a};
    std::vector<Rat> quot(static_cast<std::size_t>(dq) + 1, Rat{0});
    for (long d = a.degree(); d >= db; --d) {
        Rat& lead = rem[static_cast<std::size_t>(d)];
        if (lead == 0) continue;
        Rat q = lead / b.leading();
        quot[static_cast<std::size_t>(d - db)] = q;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(d - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

/// Division by a monic divisor stays in Z[x]: quotient and remainder.
inline std::pair<Poly, Poly> divmod_monic(const Poly& a, const Poly& b) {
    if (!b.is_monic()) throw std::invalid_argument("divmod_monic: divisor must be monic");
    std::vector<Int> rem(a.coeffs());
    long db = b.degree();
    long dq = a.degree() - db;
    if (dq < 0) return {Poly{}, a};
    std::vector<Int> quot(static_cast<std::size_t>(dq) + 1, Int{0});
    for (long d = a.degree(); d >= db; --d) {
        Int lead = rem[static_cast<std::size_t>(d)];
        if (lead == 0) continue;
        quot[static_cast<std::size_t>(d - db)] = lead;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(d - db + j)] -= lead * b.coeff(static_cast<std::size_t>(j));
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Exact quotient a/b in Z[x]; throws when b does not divide a.
inline Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    auto [q, r] = divmod(to_rat_poly(a), to_rat_poly(b));
    if (!r.is_zero()) throw std::domain_error("exact_div: division not exact");
    std::vector<Int> c;
    c.reserve(q.coeffs().size());
    for (const auto& x : q.coeffs()) {
        if (denominator(x) != 1) throw std::domain_error("exact_div: non-integral quotient");
        c.push_back(numerator(x));
    }
    return Poly(std::move(c));
}

/// Positive gcd of the coefficients; 0 for the zero polynomial.
inline Int content(const Poly& p) {
    Int g = 0;
    for (const auto& a : p.coeffs()) g = int_gcd(g, a);
    return g;
}

inline Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    Int c = content(p);
    std::vector<Int> r;
    r.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) r.push_back(a / c);
    return Poly(std::move(r));
}

/// Gcd in Z[x], primitive with positive leading coefficient (primitive PRS).
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    Int cont = int_gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.is_zero()) {
        // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
        long da = a.degree(), db = b.degree();
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        Int scale = int_pow(b.leading(), static_cast<unsigned long>(da - db + 1));
        Poly r = scale * a;
        // remainder of r by b (b has invertible-by-construction lead after scaling)
        std::vector<Int> rem(r.coeffs());
        for (long d = r.degree(); d >= db; --d) {
            Int lead = rem[static_cast<std::size_t>(d)];
            if (lead == 0) continue;
            Int q = lead / b.leading();  // exact by the pseudo-remainder scaling
            for (long j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(d - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
        }
        a = b;
        b = primitive_part(Poly(std::move(rem)));
    }
    Poly g = cont * a;
    return g.leading() < 0 ? -g : g;
}

/// Resultant via Bareiss fraction-free elimination of the Sylvester matrix.
/// Exact over Z; throws on zero input.
inline Int resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
    long m = f.degree(), n = g.degree();
    if (m == 0) return int_pow(f.leading(), static_cast<unsigned long>(n));
    if (n == 0) return int_pow(g.leading(), static_cast<unsigned long>(m));
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Int>> a(size, std::vector<Int>(size, Int{0}));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] =
                f.coeff(static_cast<std::size_t>(m - j));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j)
            a[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] =
                g.coeff(static_cast<std::size_t>(n - j));

    Int denom{1};
    int sign = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < size && a[p][k] == 0) ++p;
            if (p == size) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i)
            for (std::size_t j = k + 1; j < size; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / denom;
        denom = a[k][k];
    }
    return sign > 0 ? a[size - 1][size - 1] : -a[size - 1][size - 1];
}

/// Largest e with f^e | g, for monic non-constant f. Nullopt encodes the
/// infinite multiplicity of g = 0.
inline std::optional<long> multiplicity(const Poly& f, const Poly& g) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("multiplicity: f must be monic and non-constant");
    if (g.is_zero()) return std::nullopt;
    long e = 0;
    Poly h = g;
    while (h.degree() >= f.degree()) {
        auto [q, r] = divmod_monic(h, f);
        if (!r.is_zero()) break;
        h = q;
        ++e;
    }
    return e;
}

/// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g, g monic
/// (or zero when both inputs are zero).
inline std::tuple<RatPoly, RatPoly, RatPoly> extended_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = RatPoly::constant(Rat{1}), u1{};
    RatPoly v0{}, v1 = RatPoly::constant(Rat{1});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (r0.is_zero()) return {r0, u0, v0};
    Rat lead = r0.leading();
    RatPoly norm = RatPoly::constant(Rat{1} / lead);
    return {norm * r0, norm * u0, norm * v0};
}

}  // namespace metafp
