// Exact arbitrary-precision scalar types and small number-theory helpers
// shared by the whole library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace metafp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

inline Int int_pow(const Int& base, unsigned long e) {
    Int r{1}, b = base;
    while (e != 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e >= 0) {
        Rat r{1};
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    }
    if (base == 0) throw std::domain_error("rat_pow: negative power of zero");
    Rat r{1};
    for (long i = 0; i < -e; ++i) r /= base;
    return r;
}

/// Largest e with k^e dividing n (n != 0, k >= 2).
inline long k_order(Int n, const Int& k) {
    if (n == 0) throw std::invalid_argument("k_order: zero argument");
    if (k < 2) throw std::invalid_argument("k_order: modulus must be >= 2");
    long e = 0;
    n = abs(n);
    while (n % k == 0) {
        n /= k;
        ++e;
    }
    return e;
}

/// True when every prime factor of n divides k (units of Z[1/k]).
inline bool is_k_smooth(Int n, const Int& k) {
    if (n == 0) return false;
    n = abs(n);
    while (n != 1) {
        Int g = int_gcd(n, k);
        if (g == 1) return false;
        while (n % g == 0) n /= g;
    }
    return true;
}

/// Exact p-order of a nonzero rational.
inline long p_order(const Rat& r, const Int& p) {
    if (r == 0) throw std::invalid_argument("p_order: zero argument");
    long e = 0;
    Int num = abs(numerator(r)), den = denominator(r);
    while (num % p == 0) {
        num /= p;
        ++e;
    }
    while (den % p == 0) {
        den /= p;
        --e;
    }
    return e;
}

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline Int rat_ceil(const Rat& r) {
    Int num = numerator(r), den = denominator(r);  // den > 0 canonically
    Int q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

inline Int rat_floor(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

/// Integer extended with +infinity; the value a valuation takes.
/// Infinity is reserved for the zero element and dominates comparisons;
/// addition saturates.
class ExtInt {
public:
    ExtInt() : finite_(true), value_(0) {}
    ExtInt(Int v) : finite_(true), value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    ExtInt(long v) : finite_(true), value_(v) {}            // NOLINT(google-explicit-constructor)

    static ExtInt infinity() {
        ExtInt e;
        e.finite_ = false;
        return e;
    }

    bool is_infinity() const { return !finite_; }
    const Int& value() const {
        if (!finite_) throw std::domain_error("ExtInt: value() of infinity");
        return value_;
    }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
    friend bool operator<(const ExtInt& a, const ExtInt& b) {
        if (a.finite_ && b.finite_) return a.value_ < b.value_;
        return a.finite_ && !b.finite_;
    }
    friend bool operator<=(const ExtInt& a, const ExtInt& b) { return a < b || a == b; }
    friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
    friend bool operator>=(const ExtInt& a, const ExtInt& b) { return b <= a; }

    friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return ExtInt(a.value_ + b.value_);
    }

    friend ExtInt min(const ExtInt& a, const ExtInt& b) { return a < b ? a : b; }

    std::string str() const { return finite_ ? value_.str() : "infinity"; }

private:
    bool finite_;
    Int value_;
};

}  // namespace metafp
