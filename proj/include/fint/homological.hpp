#ifndef FINT_HOMOLOGICAL_HPP
#define FINT_HOMOLOGICAL_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "fint/homog_poly.hpp"
#include "fint/resonance.hpp"
#include "fint/vector_field.hpp"

namespace fint {

// The operator L* = <By, d/dy> restricted to span{ x1^p y^q : |q| = r }.
// x1 powers are spectators: the action never touches them.
template <class K>
struct HomOperator {
    JordanForm<K> B;
    int p = 0;
    int r = 0;

    int nvars() const { return static_cast<int>(B.size()) + 1; }
};

template <class K>
HomOperator<K> assemble(const JordanForm<K>& B, int p, int r) {
    if (p < 0 || r < 0) throw Error("negative degree in operator block");
    for (std::size_t i = 0; i + 1 < B.size(); ++i)
        if (B.super[i] &&
            !ScalarOps<K>::is_exact_zero(B.diag[i] - B.diag[i + 1]))
            throw Error("not a Jordan form: chain across distinct eigenvalues");
    if (!B.super.empty() && B.super.back())
        throw Error("not a Jordan form: dangling chain flag");
    return HomOperator<K>{B, p, r};
}

namespace detail {

// |q| of a full exponent (x1, y...)
inline int tail_degree(const Exponent& ex) {
    int d = 0;
    for (std::size_t j = 1; j < ex.size(); ++j) d += static_cast<int>(ex[j]);
    return d;
}

template <class K>
K tail_eigenvalue(const JordanForm<K>& B, const Exponent& ex) {
    K acc = ScalarOps<K>::zero();
    for (std::size_t j = 0; j < B.size(); ++j) {
        if (ex[j + 1] == 0) continue;
        acc += B.diag[j] * ScalarOps<K>::from_rational(
                               Rational(static_cast<long>(ex[j + 1])));
    }
    return acc;
}

}  // namespace detail

// L*(h) for h with monomials x1^p y^q (any mix of p, q).
template <class K>
HomogPoly<K> apply_tail_operator(const JordanForm<K>& B,
                                 const HomogPoly<K>& h) {
    HomogPoly<K> out(h.nvars, h.deg);
    for (const auto& [ex, c] : h.terms) {
        out.add_term(ex, c * detail::tail_eigenvalue(B, ex));
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
            if (!B.super[j] || ex[j + 1] == 0) continue;
            Exponent e2 = ex;
            e2[j + 1] -= 1;
            e2[j + 2] += 1;
            out.add_term(e2, c * ScalarOps<K>::from_rational(Rational(
                                    static_cast<long>(ex[j + 1]))));
        }
    }
    return out;
}

// Solve L*(u) = rhs by one descending-lex back-substitution sweep.  The
// Jordan coupling maps every monomial to a lex-smaller one, so when a
// monomial's turn comes every contribution from above is already known.
// Requires |q| >= 1 on every rhs monomial and certified nonzero <lambda*, q>
// along the way.
template <class K>
HomogPoly<K> solve_tail_system(const JordanForm<K>& B,
                               const HomogPoly<K>& rhs) {
    for (const auto& [ex, c] : rhs.terms) {
        (void)c;
        if (detail::tail_degree(ex) == 0)
            throw ValuationError("pure x1 monomial in homological right-hand side");
    }

    // support closure under the coupling moves
    std::set<Exponent> support;
    std::vector<Exponent> work;
    for (const auto& [ex, c] : rhs.terms) {
        (void)c;
        if (support.insert(ex).second) work.push_back(ex);
    }
    while (!work.empty()) {
        Exponent ex = work.back();
        work.pop_back();
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
            if (!B.super[j] || ex[j + 1] == 0) continue;
            Exponent e2 = ex;
            e2[j + 1] -= 1;
            e2[j + 2] += 1;
            if (support.insert(e2).second) work.push_back(e2);
        }
    }

    std::vector<Exponent> order(support.begin(), support.end());
    std::sort(order.begin(), order.end(),
              [](const Exponent& a, const Exponent& b) { return b < a; });

    std::map<Exponent, K> pending;
    for (const auto& [ex, c] : rhs.terms) pending.emplace(ex, c);

    HomogPoly<K> u(rhs.nvars, rhs.deg);
    for (const auto& ex : order) {
        auto it = pending.find(ex);
        if (it == pending.end() || ScalarOps<K>::is_exact_zero(it->second))
            continue;
        K div = detail::tail_eigenvalue(B, ex);
        Sign s = ScalarOps<K>::sign(div);
        if (s == Sign::zero)
            throw ZeroDivisor("resonant tail monomial " + ex.str());
        if (s == Sign::undecided)
            throw PrecisionExhausted("divisor sign undecided at " + ex.str());
        K coeff = it->second / div;
        u.add_term(ex, coeff);
        // push the coupling contributions of u_ex down to smaller monomials
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
            if (!B.super[j] || ex[j + 1] == 0) continue;
            Exponent e2 = ex;
            e2[j + 1] -= 1;
            e2[j + 2] += 1;
            K contrib = coeff * ScalarOps<K>::from_rational(Rational(
                                    static_cast<long>(ex[j + 1])));
            auto [pit, fresh] = pending.emplace(e2, -contrib);
            if (!fresh) pit->second -= contrib;
        }
    }
    return u;
}

template <class K>
HomogPoly<K> apply(const HomOperator<K>& op, const HomogPoly<K>& h) {
    for (const auto& [ex, c] : h.terms) {
        (void)c;
        if (static_cast<int>(ex[0]) != op.p || detail::tail_degree(ex) != op.r)
            throw TruncationMismatch("monomial outside the operator block");
    }
    return apply_tail_operator(op.B, h);
}

template <class K>
HomogPoly<K> solve(const HomOperator<K>& op, const HomogPoly<K>& rhs) {
    for (const auto& [ex, c] : rhs.terms) {
        (void)c;
        if (static_cast<int>(ex[0]) != op.p || detail::tail_degree(ex) != op.r)
            throw TruncationMismatch("monomial outside the operator block");
    }
    return solve_tail_system(op.B, rhs);
}

// Monomial kernel of L* on the block.  Seeds each resonant monomial and
// keeps it only if L* really kills it; complete under tail nonresonance and
// for the chain structures the pipelines meet (coupling stays inside one
// eigenvalue, so a surviving seed is genuinely in the kernel).
template <class K>
std::vector<HomogPoly<K>> kernel_basis(const HomOperator<K>& op) {
    std::vector<HomogPoly<K>> out;
    int n = op.nvars();
    if (op.r == 0) {
        HomogPoly<K> mono(n, op.p);
        Exponent ex(static_cast<std::size_t>(n));
        ex[0] = static_cast<std::uint32_t>(op.p);
        mono.add_term(ex, ScalarOps<K>::one());
        out.push_back(mono);
        return out;
    }
    for (const auto& q : exponents_of_degree(static_cast<std::size_t>(n - 1),
                                             op.r)) {
        Exponent ex(static_cast<std::size_t>(n));
        ex[0] = static_cast<std::uint32_t>(op.p);
        for (int j = 0; j < n - 1; ++j) ex[j + 1] = q[j];
        K lam = detail::tail_eigenvalue(op.B, ex);
        Sign s = ScalarOps<K>::sign(lam);
        if (s == Sign::undecided)
            throw PrecisionExhausted("eigenvalue sign undecided at " + ex.str());
        if (s != Sign::zero) continue;
        HomogPoly<K> cand(n, op.p + op.r);
        cand.add_term(ex, ScalarOps<K>::one());
        if (apply_tail_operator(op.B, cand).empty()) out.push_back(cand);
    }
    return out;
}

}  // namespace fint

#endif
