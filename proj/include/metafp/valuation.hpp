// Discrete valuations on the localized ring: the f_i-adic valuations and the
// degree valuation on Q(x), plus p-adic valuations on rational constants.
// Each of the first two kinds induces an integer character of Q.
#pragma once

#include "character.hpp"
#include "localized.hpp"

#include <stdexcept>
#include <string>

namespace metafp {

struct ValuationId {
    enum class Kind { fadic, degree, padic };
    Kind kind = Kind::degree;
    long index = 0;  // fadic: index into the designated block
    Int prime = 0;   // padic

    static ValuationId fadic(const Setup& s, long i) {
        if (i < 0 || i > s.n()) throw std::invalid_argument("fadic index out of block range");
        return {Kind::fadic, i, 0};
    }
    static ValuationId degree() { return {Kind::degree, 0, 0}; }
    static ValuationId padic(Int p) {
        if (!is_prime(p)) throw std::invalid_argument("padic: " + p.str() + " is not prime");
        return {Kind::padic, 0, std::move(p)};
    }

    std::string name() const {
        switch (kind) {
            case Kind::fadic: return "v" + std::to_string(index);
            case Kind::degree: return "w";
            case Kind::padic: return "p" + prime.str() + "-adic";
        }
        return "?";
    }
};

/// Value of the valuation on a canonical element. For the f_i-adic valuation
/// this is the stored exponent; for the degree valuation deg(denominator) -
/// deg(numerator); p-adic applies to constants only. v(0) = infinity.
inline ExtInt valuation(const ValuationId& v, const Localized& e) {
    if (e.is_zero()) return ExtInt::infinity();
    switch (v.kind) {
        case ValuationId::Kind::fadic:
            return ExtInt(Int(e.exps().at(static_cast<std::size_t>(v.index))));
        case ValuationId::Kind::degree: {
            const auto& d = e.setup()->degrees;
            Int w = -Int(e.numer().degree());
            for (std::size_t i = 0; i < d.size(); ++i) w -= Int(e.exps()[i]) * d[i];
            return ExtInt(w);
        }
        case ValuationId::Kind::padic: {
            if (!e.is_constant())
                throw std::domain_error("p-adic valuation applies to rational constants only");
            return ExtInt(Int(p_order(e.constant_value(), v.prime)));
        }
    }
    throw std::logic_error("valuation: bad kind");
}

/// The character q |-> v(monomial_image(q)) on the Q-basis; zero on q_{-1}
/// and on every block beyond the first. Defined for the f-adic and degree
/// valuations.
inline Character character_of(const ValuationId& v, const SetupPtr& setup) {
    if (v.kind == ValuationId::Kind::padic)
        throw std::invalid_argument("character_of: p-adic valuations induce no character here");
    Character chi(static_cast<std::size_t>(setup->rank_q), Rat{0});
    const auto& d = setup->degrees;
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::size_t pos = 1 + i;
        if (v.kind == ValuationId::Kind::fadic)
            chi[pos] = (static_cast<long>(i) == v.index) ? Rat{1} : Rat{0};
        else
            chi[pos] = Rat(-d[i]);
    }
    return chi;
}

}  // namespace metafp
