#ifndef FINT_RESONANCE_HPP
#define FINT_RESONANCE_HPP

#include <optional>
#include <vector>

#include "fint/exponent.hpp"
#include "fint/scalar.hpp"

namespace fint {

// All exponent vectors in `nvars` variables of exact total degree d, in
// ascending lex order.
inline std::vector<Exponent> exponents_of_degree(std::size_t nvars, int d) {
    std::vector<Exponent> out;
    Exponent ex(nvars);
    // place d units into nvars slots, recursively, smallest-lex first
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == nvars) {
            ex[pos] = static_cast<std::uint32_t>(left);
            out.push_back(ex);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            ex[pos] = static_cast<std::uint32_t>(v);
            self(self, pos + 1, left - v);
        }
        ex[pos] = 0;
    };
    if (nvars == 0) return out;
    rec(rec, 0, d);
    return out;
}

template <class K>
K dot(const std::vector<K>& lambda, const Exponent& m) {
    K acc = ScalarOps<K>::zero();
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (m[i] == 0) continue;
        acc += lambda[i] * ScalarOps<K>::from_rational(
                               Rational(static_cast<long>(m[i])));
    }
    return acc;
}

// Lattice of m with <m,lambda> = 0, 1 <= |m| <= cap.  Exact rationals only:
// an interval can certify nonvanishing but never exact vanishing.  Output
// sorted by (degree, lex).
inline std::vector<Exponent> resonance_lattice(
    const std::vector<Rational>& lambda, int cap) {
    std::vector<Exponent> out;
    std::size_t n = lambda.size();
    for (int d = 1; d <= cap; ++d)
        for (const auto& m : exponents_of_degree(n, d))
            if (dot(lambda, m).is_zero()) out.push_back(m);
    return out;
}

// Outcome of scanning <m*, lambda*> over 1 <= |m*| <= cap.  Either every
// value has certified nonzero sign (with the per-degree minimum modulus
// recorded), or a violating exponent is returned.
template <class K>
struct NonresonanceScan {
    std::optional<Exponent> violation;      // set: resonance found / undecided
    std::vector<K> min_abs;                 // index d-1: min |<m*,l*>|, |m*|=d
    std::vector<Exponent> min_arg;          // the exponent attaining it
    bool certified() const { return !violation.has_value(); }
};

template <class K>
NonresonanceScan<K> certify_tail_nonresonant(const std::vector<K>& lambda,
                                             int cap) {
    NonresonanceScan<K> out;
    for (int d = 1; d <= cap; ++d) {
        bool have = false;
        K best = ScalarOps<K>::zero();
        Exponent barg;
        for (const auto& m : exponents_of_degree(lambda.size(), d)) {
            K v = dot(lambda, m);
            Sign s = ScalarOps<K>::sign(v);
            if (s == Sign::undecided)
                throw PrecisionExhausted("sign of <" + m.str() +
                                         ", lambda*> undecided");
            if (s == Sign::zero) {
                out.violation = m;
                return out;
            }
            K a = s == Sign::negative ? -v : v;
            if (!have || ScalarOps<K>::mid_less(a, best)) {
                best = a;
                barg = m;
                have = true;
            }
        }
        out.min_abs.push_back(best);
        out.min_arg.push_back(barg);
    }
    return out;
}

// Spectrum of L(h) = <grad h, M1 x> - M2 h on degree-r polynomial p-vectors,
// for triangular M1, M2 with diagonals mu, nu: the multiset
// { <k, mu> - nu_j : |k| = r, j = 1..p }.  Monomials in ascending lex order,
// j fastest.
template <class K>
std::vector<K> operator_spectrum(const std::vector<K>& mu,
                                 const std::vector<K>& nu, int r) {
    if (r < 0) throw Error("negative degree");
    std::vector<K> out;
    for (const auto& k : exponents_of_degree(mu.size(), r)) {
        K base = dot(mu, k);
        for (const K& nj : nu) out.push_back(base - nj);
    }
    return out;
}

}  // namespace fint

#endif
