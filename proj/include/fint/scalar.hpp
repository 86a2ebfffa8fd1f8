#ifndef FINT_SCALAR_HPP
#define FINT_SCALAR_HPP

#include <string>

#include "fint/ball.hpp"
#include "fint/rational.hpp"

namespace fint {

// Uniform face over the two coefficient backends.  Exact code instantiates
// with Rational, certified numeric code with Ball.
template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational& q) { return q; }
    static Sign sign(const Rational& x) {
        int s = x.sign();
        return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
    }
    static bool is_exact_zero(const Rational& x) { return x.is_zero(); }
    static bool mid_less(const Rational& a, const Rational& b) { return a < b; }
    static double to_double(const Rational& x) { return x.to_double(); }
    static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct ScalarOps<Ball> {
    static constexpr bool exact = false;
    static Ball zero() { return Ball(0); }
    static Ball one() { return Ball(1); }
    static Ball from_rational(const Rational& q) { return Ball::from_rational(q); }
    static Sign sign(const Ball& x) { return x.sign(); }
    static bool is_exact_zero(const Ball& x) { return x.is_exact_zero(); }
    static bool mid_less(const Ball& a, const Ball& b) {
        return Dyadic::cmp(a.mid(), b.mid()) < 0;
    }
    static double to_double(const Ball& x) { return x.to_double(); }
    static std::string str(const Ball& x) { return x.str(); }
};

// Division with the failure modes the solvers care about: an exactly zero
// divisor is a structural error, an undecidable sign an arithmetic one.
template <class K>
K checked_div(const K& num, const K& den) {
    Sign s = ScalarOps<K>::sign(den);
    if (s == Sign::zero) throw ZeroDivisor("division by exact zero");
    if (s == Sign::undecided)
        throw PrecisionExhausted("divisor sign undecided at current precision");
    return num / den;
}

}  // namespace fint

#endif
