// Canonical elements of the localized ring
//   Z[x, x^-1, f_1^-1, ..., f_n^-1, 1/k]
// for the designated block of a setup, together with the free abelian group
// Q acting on it through monomials.
//
// Canonical form: numer * prod_i f_i^{exp_i} * k^{kexp} with numer carrying
// no f_i factor and content not divisible by k; zero is (0, 0,...,0, 0).
// Equality is therefore structural.
#pragma once

#include "setup.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metafp {

class Localized {
public:
    Localized() = default;

    static Localized zero(SetupPtr s) { return Localized(std::move(s)); }
    static Localized one(SetupPtr s) { return integer(std::move(s), Int{1}); }
    static Localized integer(SetupPtr s, Int v) {
        return make(std::move(s), Poly::constant(std::move(v)), {}, 0);
    }
    static Localized from_poly(SetupPtr s, Poly p) { return make(std::move(s), std::move(p), {}, 0); }

    /// Builds the canonical form from raw data; exponents may be partial
    /// (missing entries are 0).
    static Localized make(SetupPtr s, Poly numer, std::vector<long> exps, long kexp) {
        if (!s) throw std::invalid_argument("Localized: null setup");
        Localized e(std::move(s));
        exps.resize(e.setup_->fs().size(), 0);
        e.numer_ = std::move(numer);
        e.exp_ = std::move(exps);
        e.kexp_ = kexp;
        e.normalize();
        return e;
    }

    const SetupPtr& setup() const { return setup_; }
    const Poly& numer() const { return numer_; }
    const std::vector<long>& exps() const { return exp_; }
    long kexp() const { return kexp_; }
    bool is_zero() const { return numer_.is_zero(); }
    bool is_one() const {
        return numer_ == Poly::constant(Int{1}) && kexp_ == 0 &&
               std::all_of(exp_.begin(), exp_.end(), [](long e) { return e == 0; });
    }
    /// Constant iff it lies in Z[1/k].
    bool is_constant() const {
        if (is_zero()) return true;
        if (!numer_.is_constant()) return false;
        return std::all_of(exp_.begin(), exp_.end(), [](long e) { return e == 0; });
    }
    Rat constant_value() const {
        if (!is_constant()) throw std::domain_error("Localized: not a constant");
        if (is_zero()) return Rat{0};
        Rat v{numer_.coeff(0)};
        Rat kk{setup_->k};
        return v * rat_pow(kk, kexp_);
    }

    friend bool operator==(const Localized& a, const Localized& b) {
        a.require_same_setup(b);
        return a.numer_ == b.numer_ && a.exp_ == b.exp_ && a.kexp_ == b.kexp_;
    }
    friend bool operator!=(const Localized& a, const Localized& b) { return !(a == b); }
    friend bool operator<(const Localized& a, const Localized& b) {
        a.require_same_setup(b);
        if (a.numer_ != b.numer_) return a.numer_ < b.numer_;
        if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
        return a.kexp_ < b.kexp_;
    }

    friend Localized operator-(const Localized& a) {
        Localized r = a;
        r.numer_ = -r.numer_;
        return r;
    }

    friend Localized operator+(const Localized& a, const Localized& b) {
        a.require_same_setup(b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::vector<long> m(a.exp_.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(a.exp_[i], b.exp_[i]);
        long mk = std::min(a.kexp_, b.kexp_);
        Poly pa = a.lift(m, mk), pb = b.lift(m, mk);
        return make(a.setup_, pa + pb, std::move(m), mk);
    }
    friend Localized operator-(const Localized& a, const Localized& b) { return a + (-b); }

    friend Localized operator*(const Localized& a, const Localized& b) {
        a.require_same_setup(b);
        if (a.is_zero() || b.is_zero()) return zero(a.setup_);
        std::vector<long> e(a.exp_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exp_[i] + b.exp_[i];
        return make(a.setup_, a.numer_ * b.numer_, std::move(e), a.kexp_ + b.kexp_);
    }

    friend Localized operator*(const Int& s, const Localized& a) {
        return make(a.setup_, s * a.numer_, a.exp_, a.kexp_);
    }

    /// Inverse, defined for units whose numerator is a k-smooth constant
    /// (monomial images and their products).
    Localized unit_inverse() const {
        if (is_zero()) throw std::domain_error("unit_inverse: zero");
        if (!numer_.is_constant()) throw std::domain_error("unit_inverse: not a monomial unit");
        Int c = numer_.coeff(0);
        if (!is_k_smooth(c, setup_->k)) throw std::domain_error("unit_inverse: constant not k-smooth");
        // 1/c = (k^t / c) * k^-t for the least t with c | k^t
        Int q{1};
        long t = 0;
        Int cc = abs(c);
        while (q % cc != 0) {
            q *= setup_->k;
            ++t;
        }
        Int num = q / cc;
        if (c < 0) num = -num;
        std::vector<long> e(exp_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = -exp_[i];
        return make(setup_, Poly::constant(num), std::move(e), -kexp_ - t);
    }

    Localized pow(long e) const {
        if (e < 0) return unit_inverse().pow(-e);
        Localized r = one(setup_), b = *this;
        unsigned long m = static_cast<unsigned long>(e);
        while (m != 0) {
            if (m & 1) r = r * b;
            b = b * b;
            m >>= 1;
        }
        return r;
    }

    /// Expands numer * prod f^exp * k^kexp into a rational-coefficient
    /// polynomial; requires all exponents nonnegative.
    RatPoly expand() const {
        for (long e : exp_)
            if (e < 0) throw std::domain_error("expand: negative f-exponent");
        Poly p = numer_;
        for (std::size_t i = 0; i < exp_.size(); ++i)
            p = p * setup_->fs()[i].pow(static_cast<unsigned long>(exp_[i]));
        RatPoly r = to_rat_poly(p);
        Rat scale = rat_pow(Rat{setup_->k}, kexp_);
        return RatPoly::constant(scale) * r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream num, den;
        bool num_any = false, den_any = false;
        auto emit = [&](std::ostringstream& os, bool& any, const std::string& base, long e) {
            if (any) os << "*";
            os << base;
            if (e != 1) os << "^" << e;
            any = true;
        };
        if (!(numer_ == Poly::constant(Int{1}))) {
            if (numer_.is_constant() || numer_.degree() < 1) {
                num << numer_.str();
            } else {
                num << "(" << numer_.str() << ")";
            }
            num_any = true;
        }
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            if (exp_[i] == 0) continue;
            const Poly& f = setup_->fs()[i];
            std::string base = f.degree() == 1 && f.coeff(0) == 0 ? "x" : "(" + f.str() + ")";
            if (exp_[i] > 0) emit(num, num_any, base, exp_[i]);
            else emit(den, den_any, base, -exp_[i]);
        }
        if (kexp_ > 0) emit(num, num_any, setup_->k.str(), kexp_);
        else if (kexp_ < 0) emit(den, den_any, setup_->k.str(), -kexp_);
        std::string n = num_any ? num.str() : "1";
        if (!den_any) return n;
        return n + "/(" + den.str() + ")";
    }

private:
    explicit Localized(SetupPtr s) : setup_(std::move(s)), exp_(setup_ ? setup_->fs().size() : 0, 0) {}

    void require_same_setup(const Localized& other) const {
        if (setup_ == other.setup_) return;
        if (!setup_ || !other.setup_ || !(*setup_ == *other.setup_))
            throw std::invalid_argument("Localized: setup mismatch");
    }

    /// numer * prod f^(exp-m) * k^(kexp-mk), all shifts nonnegative.
    Poly lift(const std::vector<long>& m, long mk) const {
        Poly p = numer_;
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            long e = exp_[i] - m[i];
            if (e > 0) p = p * setup_->fs()[i].pow(static_cast<unsigned long>(e));
        }
        if (kexp_ - mk > 0) p = int_pow(setup_->k, static_cast<unsigned long>(kexp_ - mk)) * p;
        return p;
    }

    void normalize() {
        if (numer_.is_zero()) {
            std::fill(exp_.begin(), exp_.end(), 0);
            kexp_ = 0;
            return;
        }
        const auto& fs = setup_->fs();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            auto m = multiplicity(fs[i], numer_);
            if (m && *m > 0) {
                numer_ = exact_div(numer_, fs[i].pow(static_cast<unsigned long>(*m)));
                exp_[i] += *m;
            }
        }
        Int c = content(numer_);
        long t = 0;
        while (c % setup_->k == 0) {
            c /= setup_->k;
            ++t;
        }
        if (t > 0) {
            numer_ = exact_div(numer_, Poly::constant(int_pow(setup_->k, static_cast<unsigned long>(t))));
            kexp_ += t;
        }
    }

    SetupPtr setup_;
    Poly numer_;
    std::vector<long> exp_;
    long kexp_ = 0;
};

/// Exponent vector over the Q-basis (q_{-1} first, then the block
/// generators in order). Generators of blocks beyond the first are carried
/// formally; they act trivially on the designated block's coordinates.
struct QMonomial {
    std::vector<long> exps;

    static QMonomial identity(const Setup& s) { return {std::vector<long>(static_cast<std::size_t>(s.rank_q), 0)}; }
    static QMonomial generator(const Setup& s, long basis_index, long power = 1) {
        QMonomial q = identity(s);
        q.exps[static_cast<std::size_t>(basis_index)] = power;
        return q;
    }

    bool is_identity() const {
        return std::all_of(exps.begin(), exps.end(), [](long e) { return e == 0; });
    }
    long weight() const {
        long w = 0;
        for (long e : exps) w += e < 0 ? -e : e;
        return w;
    }
    friend QMonomial operator*(const QMonomial& a, const QMonomial& b) {
        if (a.exps.size() != b.exps.size()) throw std::invalid_argument("QMonomial: rank mismatch");
        QMonomial r = a;
        for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
        return r;
    }
    QMonomial inverse() const {
        QMonomial r = *this;
        for (auto& e : r.exps) e = -e;
        return r;
    }
    friend bool operator==(const QMonomial& a, const QMonomial& b) { return a.exps == b.exps; }
    friend bool operator<(const QMonomial& a, const QMonomial& b) { return a.exps < b.exps; }

    std::string str(const Setup& s) const {
        if (is_identity()) return "1";
        auto names = s.basis_names();
        std::ostringstream os;
        bool any = false;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (any) os << "*";
            os << names[i];
            if (exps[i] != 1) os << "^" << exps[i];
            any = true;
        }
        return os.str();
    }
};

/// Multiplicative image q_{-1} -> k, q_j -> f_j on the designated block;
/// generators of other blocks map to 1.
inline Localized monomial_image(const QMonomial& q, const SetupPtr& setup) {
    if (q.exps.size() != static_cast<std::size_t>(setup->rank_q))
        throw std::invalid_argument("monomial_image: rank mismatch");
    std::size_t nblock = setup->fs().size();
    std::vector<long> exps(q.exps.begin() + 1, q.exps.begin() + 1 + static_cast<long>(nblock));
    return Localized::make(setup, Poly::constant(Int{1}), std::move(exps), q.exps[0]);
}

/// The right action of Q on the module: a o q = image(q) * a.
inline Localized module_action(const Localized& a, const QMonomial& q) {
    return monomial_image(q, a.setup()) * a;
}

/// Element of the split extension G = A x| Q written q * a; composition
/// (a, q)(b, p) = (a o p + b, q p).
struct GroupElement {
    Localized a;
    QMonomial q;

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return {module_action(g.a, h.q) + h.a, g.q * h.q};
    }
    GroupElement inverse() const {
        QMonomial qi = q.inverse();
        return {-module_action(a, qi), qi};
    }
    friend bool operator==(const GroupElement& g, const GroupElement& h) {
        return g.a == h.a && g.q == h.q;
    }
};

inline GroupElement group_identity(const SetupPtr& s) {
    return {Localized::zero(s), QMonomial::identity(*s)};
}

}  // namespace metafp
