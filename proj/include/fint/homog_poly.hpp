#ifndef FINT_HOMOG_POLY_HPP
#define FINT_HOMOG_POLY_HPP

#include <map>
#include <string>

#include "fint/exponent.hpp"
#include "fint/scalar.hpp"

namespace fint {

// Homogeneous polynomial of fixed degree.  Terms are kept in a sorted map so
// iteration order (and with it every downstream computation and report) is
// deterministic.  Exact zeros are pruned on insertion; Ball coefficients are
// pruned only when the whole ball is the point 0.
template <class K>
struct HomogPoly {
    int nvars = 0;
    int deg = 0;
    std::map<Exponent, K> terms;

    HomogPoly() = default;
    HomogPoly(int n, int d) : nvars(n), deg(d) {}

    bool empty() const { return terms.empty(); }

    void add_term(const Exponent& ex, const K& c) {
        if (static_cast<int>(ex.size()) != nvars)
            throw TruncationMismatch("term arity mismatch");
        if (ex.degree() != deg)
            throw TruncationMismatch("term degree " + std::to_string(ex.degree()) +
                                     " in homogeneous part of degree " +
                                     std::to_string(deg));
        if (ScalarOps<K>::is_exact_zero(c)) return;
        auto it = terms.find(ex);
        if (it == terms.end()) {
            terms.emplace(ex, c);
        } else {
            it->second += c;
            if (ScalarOps<K>::is_exact_zero(it->second)) terms.erase(it);
        }
    }

    const K* coeff(const Exponent& ex) const {
        auto it = terms.find(ex);
        return it == terms.end() ? nullptr : &it->second;
    }
};

template <class K>
HomogPoly<K> operator+(const HomogPoly<K>& a, const HomogPoly<K>& b) {
    if (a.nvars != b.nvars || a.deg != b.deg)
        throw TruncationMismatch("adding incompatible homogeneous parts");
    HomogPoly<K> r = a;
    for (const auto& [ex, c] : b.terms) r.add_term(ex, c);
    return r;
}

template <class K>
HomogPoly<K> operator-(const HomogPoly<K>& a) {
    HomogPoly<K> r(a.nvars, a.deg);
    for (const auto& [ex, c] : a.terms) r.terms.emplace(ex, -c);
    return r;
}

template <class K>
HomogPoly<K> operator-(const HomogPoly<K>& a, const HomogPoly<K>& b) {
    return a + (-b);
}

template <class K>
HomogPoly<K> scale(const HomogPoly<K>& a, const K& s) {
    HomogPoly<K> r(a.nvars, a.deg);
    for (const auto& [ex, c] : a.terms) r.add_term(ex, c * s);
    return r;
}

template <class K>
HomogPoly<K> mul(const HomogPoly<K>& a, const HomogPoly<K>& b) {
    if (a.nvars != b.nvars)
        throw TruncationMismatch("multiplying polynomials in different variables");
    HomogPoly<K> r(a.nvars, a.deg + b.deg);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add_term(ea + eb, ca * cb);
    return r;
}

// Partial derivative; degree drops by one.
template <class K>
HomogPoly<K> diff(const HomogPoly<K>& a, std::size_t var) {
    HomogPoly<K> r(a.nvars, a.deg > 0 ? a.deg - 1 : 0);
    for (const auto& [ex, c] : a.terms) {
        if (ex[var] == 0) continue;
        Exponent e2 = ex;
        e2[var] -= 1;
        r.add_term(e2, c * ScalarOps<K>::from_rational(
                            Rational(static_cast<long>(ex[var]))));
    }
    return r;
}

template <class K>
std::string poly_str(const HomogPoly<K>& a) {
    if (a.empty()) return "0";
    std::string s;
    for (const auto& [ex, c] : a.terms) {
        if (!s.empty()) s += " + ";
        s += ScalarOps<K>::str(c) + "*x^" + ex.str();
    }
    return s;
}

}  // namespace fint

#endif
