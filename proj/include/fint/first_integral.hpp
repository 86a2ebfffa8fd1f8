#ifndef FINT_FIRST_INTEGRAL_HPP
#define FINT_FIRST_INTEGRAL_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "fint/homological.hpp"
#include "fint/resonance.hpp"
#include "fint/trunc_series.hpp"
#include "fint/vector_field.hpp"

namespace fint {

template <class K>
struct FirstIntegralResult {
    TruncSeries<K> H;
    int m = 1;
    K a_m = ScalarOps<K>::one();
    // free constant chosen at each degree m+1..N (always 0 by convention,
    // recorded so reports can state the normalization)
    std::vector<std::pair<int, K>> free_constants;
    // first degree <= N carrying a certified-nonzero residual coefficient,
    // or N+1 if none does
    int residual_valuation = 0;
    std::vector<double> sup_norms;  // per degree 0..N, diagnostic only
};

// Basis of ker L* on the full degree-m space.  Under a nonresonant tail this
// is exactly {x1^m}; any kernel monomial touching the y variables means the
// tail is resonant, which breaks the construction's hypotheses.
template <class K>
std::vector<HomogPoly<K>> leading_kernel(const VectorField<K>& vf, int m) {
    std::vector<HomogPoly<K>> out;
    for (int p = m; p >= 0; --p) {
        int r = m - p;
        auto kb = kernel_basis(assemble(vf.B, p, r));
        for (auto& el : kb) {
            if (r >= 1)
                throw ResonantTail("resonant tail monomial in degree " +
                                   std::to_string(m) + " kernel");
            out.push_back(std::move(el));
        }
    }
    return out;
}

// dH/dt along the field: f1 * dH/dx1 + <By + g, dH/dy>, certified through
// degree N.  Exactly zero through N iff H is a first integral to that order.
template <class K>
TruncSeries<K> residual(const VectorField<K>& vf, const TruncSeries<K>& H,
                        int N) {
    if (H.nvars() != vf.n) throw TruncationMismatch("H arity mismatch");
    if (H.trunc() < N || vf.trunc() < N)
        throw TruncationMismatch("inputs not known through degree " +
                                 std::to_string(N));
    int n = vf.n;
    TruncSeries<K> res(n, N);
    for (int i = 0; i < n; ++i) {
        TruncSeries<K> Fi = truncate(vf.f[i], N);
        if (i >= 1) {
            // linear row of B: lambda_i y_i (+ chain) on top of g_i
            Exponent ey(static_cast<std::size_t>(n));
            ey[static_cast<std::size_t>(i)] = 1;
            Fi.add_term(ey, vf.B.diag[i - 1]);
            if (i < n - 1 && vf.B.super[i - 1]) {
                Exponent ec(static_cast<std::size_t>(n));
                ec[static_cast<std::size_t>(i) + 1] = 1;
                Fi.add_term(ec, ScalarOps<K>::one());
            }
        }
        if (Fi.is_zero()) continue;
        TruncSeries<K> dH = diff(truncate(H, N), static_cast<std::size_t>(i));
        if (dH.is_zero()) continue;
        res = res + mul(dH, Fi, N);
    }
    return res;
}

// First degree whose coefficient is certified nonzero; trunc+1 when none is.
template <class K>
int certified_valuation(const TruncSeries<K>& s) {
    for (int d = 0; d <= s.trunc(); ++d)
        for (const auto& [ex, c] : s.part(d).terms) {
            (void)ex;
            Sign sg = ScalarOps<K>::sign(c);
            if (sg == Sign::positive || sg == Sign::negative) return d;
        }
    return s.trunc() + 1;
}

// Degree-by-degree construction of the formal first integral H = a_m x1^m +
// higher parts, each part solving the homological equation against the
// right-hand side accumulated from all lower parts.  Free constants (the
// pure x1^d monomials the kernel leaves undetermined) are pinned to zero.
template <class K>
FirstIntegralResult<K> build_first_integral(const VectorField<K>& vf, int N,
                                            int m = 1,
                                            K a_m = ScalarOps<K>::one()) {
    if (!vf.straightened)
        throw NotStraightened("field not straightened; run the curve pipeline first");
    auto val = [&](const TruncSeries<K>& s) {
        auto v = s.valuation();
        return v ? *v : s.trunc() + 1;
    };
    for (const auto& fi : vf.f)
        if (val(fi) < 2)
            throw NotStraightened("remainder carries a linear term");
    if (N < m) throw Error("truncation below leading degree");
    if (vf.trunc() < N)
        throw TruncationMismatch("field not known through degree " +
                                 std::to_string(N));

    auto scan = certify_tail_nonresonant(vf.tail_eigenvalues(), N);
    if (!scan.certified())
        throw ResonantTail("resonant tail exponent " + scan.violation->str());

    int n = vf.n;
    FirstIntegralResult<K> out;
    out.m = m;
    out.a_m = a_m;
    out.H = TruncSeries<K>(n, N);
    {
        Exponent lead(static_cast<std::size_t>(n));
        lead[0] = static_cast<std::uint32_t>(m);
        out.H.add_term(lead, a_m);
    }

    for (int l = 1; l + m <= N; ++l) {
        int d = m + l;
        HomogPoly<K> rhs(n, d);
        // contributions f_{i,j} * d(H_{d+1-j})/dx_i for j = 2..l+1
        for (int j = 2; j <= l + 1; ++j) {
            int hd = d + 1 - j;
            if (hd < m) continue;
            for (int i = 0; i < n; ++i) {
                const HomogPoly<K>& fij = vf.f[i].part(j);
                if (fij.empty()) continue;
                HomogPoly<K> dH =
                    diff(out.H.part(hd), static_cast<std::size_t>(i));
                if (dH.empty()) continue;
                rhs = rhs + mul(fij, dH);
            }
        }
        if (rhs.empty()) {
            out.free_constants.emplace_back(d, ScalarOps<K>::zero());
            continue;
        }
        HomogPoly<K> Hd = solve_tail_system(vf.B, -rhs);
        for (const auto& [ex, c] : Hd.terms) out.H.part(d).add_term(ex, c);
        out.free_constants.emplace_back(d, ScalarOps<K>::zero());
    }

    TruncSeries<K> res = residual(vf, out.H, N);
    out.residual_valuation = certified_valuation(res);

    for (int d = 0; d <= N; ++d) {
        double sup = 0.0;
        for (const auto& [ex, c] : out.H.part(d).terms) {
            (void)ex;
            double a = std::abs(ScalarOps<K>::to_double(c));
            if (a > sup) sup = a;
        }
        out.sup_norms.push_back(sup);
    }
    return out;
}

// Theorem-A style certificate: with a fully nonresonant spectrum (no zero
// entry, empty lattice) the operator h -> <grad h, Ax> has trivial kernel in
// every degree <= N, so no formal first integral of valuation <= N exists.
struct NonintegrabilityReport {
    int cap = 0;
    std::vector<Rational> min_abs;   // index d-1: min |<k,lambda>| over |k|=d
    std::vector<Exponent> min_arg;
};

inline NonintegrabilityReport nonintegrability_report(
    const std::vector<Rational>& lambda, int N) {
    for (const auto& l : lambda)
        if (l.is_zero())
            throw ResonantTail("zero eigenvalue: spectrum is resonant");
    auto lat = resonance_lattice(lambda, N);
    if (!lat.empty())
        throw ResonantTail("resonant spectrum at " + lat.front().str());
    auto scan = certify_tail_nonresonant(lambda, N);
    NonintegrabilityReport rep;
    rep.cap = N;
    rep.min_abs = std::move(scan.min_abs);
    rep.min_arg = std::move(scan.min_arg);
    return rep;
}

}  // namespace fint

#endif
