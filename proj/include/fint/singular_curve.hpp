#ifndef FINT_SINGULAR_CURVE_HPP
#define FINT_SINGULAR_CURVE_HPP

#include <string>
#include <utility>
#include <vector>

#include "fint/scalar.hpp"
#include "fint/vector_field.hpp"

namespace fint {

// The curve of singular points y = phi(x1) through the origin, tangent to
// the x1 axis: n-1 univariate series of valuation >= 2.
template <class K>
struct SeriesCurve {
    int n = 0;                        // ambient variable count
    std::vector<TruncSeries<K>> phi;  // phi[i] describes y_{i+1}

    SeriesCurve() = default;
    SeriesCurve(int n_, int trunc) : n(n_) {
        if (n < 2) throw Error("curve needs at least two ambient variables");
        phi.assign(static_cast<std::size_t>(n - 1), TruncSeries<K>(1, trunc));
    }

    int trunc() const { return phi.empty() ? -1 : phi[0].trunc(); }

    void validate() const {
        if (static_cast<int>(phi.size()) != n - 1)
            throw Error("curve component count mismatch");
        for (const auto& p : phi) {
            if (p.nvars() != 1 || p.trunc() != trunc())
                throw TruncationMismatch(
                    "curve components with different shape");
            auto v = p.valuation();
            if (v && *v < 2)
                throw ValuationError("curve not tangent to the x1 axis");
        }
    }
};

namespace detail {

// The identity series x1 as a univariate argument.
template <class K>
TruncSeries<K> x1_series(int trunc) {
    if (trunc < 1)
        throw TruncationMismatch("curve substitution needs order >= 1");
    TruncSeries<K> r(1, trunc);
    r.add_term(Exponent{1u}, ScalarOps<K>::one());
    return r;
}

// Reinterpret a univariate series in x1 inside the full variable set.
template <class K>
TruncSeries<K> lift_x1(const TruncSeries<K>& u, int nvars) {
    TruncSeries<K> r(nvars, u.trunc());
    for (int d = 0; d <= u.trunc(); ++d)
        for (const auto& [ex, c] : u.part(d).terms) {
            Exponent en(static_cast<std::size_t>(nvars));
            en[0] = ex[0];
            r.add_term(en, c);
        }
    return r;
}

}  // namespace detail

// Substitution arguments (x1, phi_2(x1), ..., phi_n(x1)) for restricting an
// n-variable series to the curve.
template <class K>
std::vector<TruncSeries<K>> curve_args(const SeriesCurve<K>& c, int trunc) {
    if (c.trunc() < trunc)
        throw TruncationMismatch("curve does not cover the requested order");
    std::vector<TruncSeries<K>> args;
    args.reserve(static_cast<std::size_t>(c.n));
    args.push_back(detail::x1_series<K>(trunc));
    for (const auto& p : c.phi) args.push_back(truncate(p, trunc));
    return args;
}

// Solve B*phi + g(x1, phi) = 0 degree by degree.  The degree-d coefficients
// only involve parts of phi below degree d (g has valuation >= 2), so each
// step is a single triangular solve against the Jordan structure of B.
template <class K>
SeriesCurve<K> solve_curve(const VectorField<K>& vf, int N) {
    if (N < 1 || N > vf.trunc())
        throw TruncationMismatch("curve order outside field truncation");
    for (const auto& lam : vf.B.diag) {
        Sign s = ScalarOps<K>::sign(lam);
        if (s == Sign::zero)
            throw SingularBlock("zero tail eigenvalue: implicit solve undefined");
        if (s == Sign::undecided)
            throw PrecisionExhausted("tail eigenvalue sign undecided");
    }
    const int m = vf.n - 1;
    SeriesCurve<K> curve(vf.n, N);
    for (int d = 2; d <= N; ++d) {
        auto args = curve_args(curve, N);
        std::vector<K> rhs;
        rhs.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            TruncSeries<K> gi =
                compose(vf.f[static_cast<std::size_t>(i) + 1], args);
            const K* c =
                gi.part(d).coeff(Exponent{static_cast<std::uint32_t>(d)});
            rhs.push_back(c ? *c : ScalarOps<K>::zero());
        }
        std::vector<K> cv(static_cast<std::size_t>(m), ScalarOps<K>::zero());
        for (int i = m - 1; i >= 0; --i) {
            K num = -rhs[static_cast<std::size_t>(i)];
            if (vf.B.super[static_cast<std::size_t>(i)])
                num = num - cv[static_cast<std::size_t>(i) + 1];
            cv[static_cast<std::size_t>(i)] =
                checked_div(num, vf.B.diag[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < m; ++i) {
            const K& c = cv[static_cast<std::size_t>(i)];
            if (ScalarOps<K>::is_exact_zero(c)) continue;
            curve.phi[static_cast<std::size_t>(i)].add_term(
                Exponent{static_cast<std::uint32_t>(d)}, c);
        }
    }
    return curve;
}

// Per-row residual B*phi + g(x1, phi) of the curve equation, through degree N.
// All rows are identically zero for a curve produced by solve_curve.
template <class K>
std::vector<TruncSeries<K>> curve_residual(const VectorField<K>& vf,
                                           const SeriesCurve<K>& curve,
                                           int N) {
    auto args = curve_args(curve, N);
    std::vector<TruncSeries<K>> res;
    res.reserve(static_cast<std::size_t>(vf.n - 1));
    for (int i = 0; i < vf.n - 1; ++i) {
        TruncSeries<K> r =
            compose(vf.f[static_cast<std::size_t>(i) + 1], args);
        r = r + scale(truncate(curve.phi[static_cast<std::size_t>(i)], N),
                      vf.B.diag[static_cast<std::size_t>(i)]);
        if (vf.B.super[static_cast<std::size_t>(i)])
            r = r + truncate(curve.phi[static_cast<std::size_t>(i) + 1], N);
        res.push_back(std::move(r));
    }
    return res;
}

// Outcome of restricting the first component to the curve: either every
// coefficient vanishes through degree N (the singular point is not isolated)
// or the first surviving coefficient is reported as an obstruction witness.
template <class K>
struct CurveVerdict {
    bool nonisolated = false;
    int witness_degree = -1;
    K witness = ScalarOps<K>::zero();
};

template <class K>
CurveVerdict<K> nonisolated_check(const VectorField<K>& vf,
                                  const SeriesCurve<K>& curve, int N) {
    if (N > vf.trunc())
        throw TruncationMismatch("check order outside field truncation");
    TruncSeries<K> r = compose(vf.f[0], curve_args(curve, N));
    CurveVerdict<K> v;
    for (int d = 0; d <= N; ++d)
        for (const auto& [ex, c] : r.part(d).terms) {
            (void)ex;
            Sign s = ScalarOps<K>::sign(c);
            if (s == Sign::undecided)
                throw PrecisionExhausted(
                    "curve restriction sign undecided at degree " +
                    std::to_string(d));
            if (s != Sign::zero) {
                v.witness_degree = d;
                v.witness = c;
                return v;
            }
        }
    v.nonisolated = true;
    return v;
}

namespace detail {

// Raw pushforward of the remainder under u1 = x1, v = y - phi(u1): the
// returned components are the new remainder rows relative to the unchanged
// linear part 0 (+) B.
template <class K>
std::vector<TruncSeries<K>> pushforward_components(const VectorField<K>& vf,
                                                   const SeriesCurve<K>& curve) {
    const int N = vf.trunc();
    const int n = vf.n;
    if (curve.n != n || curve.trunc() < N)
        throw TruncationMismatch("curve does not cover the field truncation");

    std::vector<TruncSeries<K>> args;
    args.reserve(static_cast<std::size_t>(n));
    TruncSeries<K> u1(n, N);
    u1.add_term(unit_exponent(static_cast<std::size_t>(n), 0),
                ScalarOps<K>::one());
    args.push_back(std::move(u1));
    for (int i = 0; i < n - 1; ++i) {
        TruncSeries<K> ai = lift_x1(
            truncate(curve.phi[static_cast<std::size_t>(i)], N), n);
        ai.add_term(
            unit_exponent(static_cast<std::size_t>(n),
                          static_cast<std::size_t>(i) + 1),
            ScalarOps<K>::one());
        args.push_back(std::move(ai));
    }

    std::vector<TruncSeries<K>> g;
    g.reserve(static_cast<std::size_t>(n));
    g.push_back(compose(vf.f[0], args));
    for (int i = 0; i < n - 1; ++i) {
        TruncSeries<K> phiN =
            truncate(curve.phi[static_cast<std::size_t>(i)], N);
        TruncSeries<K> row =
            compose(vf.f[static_cast<std::size_t>(i) + 1], args);
        row = row + lift_x1(scale(phiN, vf.B.diag[static_cast<std::size_t>(i)]),
                            n);
        if (vf.B.super[static_cast<std::size_t>(i)])
            row = row + lift_x1(
                truncate(curve.phi[static_cast<std::size_t>(i) + 1], N), n);
        row = row - mul(lift_x1(diff(phiN, 0), n), g[0], N);
        g.push_back(std::move(row));
    }
    return g;
}

}  // namespace detail

// Move the singular curve onto the v = 0 axis.  The pushforward keeps the
// linear part 0 (+) B; every remainder row must then vanish identically at
// v = 0, which is checked term by term.
template <class K>
VectorField<K> straighten(const VectorField<K>& vf,
                          const SeriesCurve<K>& curve) {
    auto g = detail::pushforward_components(vf, curve);
    for (const auto& row : g)
        for (int d = 0; d <= vf.trunc(); ++d)
            for (const auto& [ex, c] : row.part(d).terms) {
                bool pure_u1 = true;
                for (std::size_t j = 1; j < ex.size(); ++j)
                    if (ex[j] > 0) pure_u1 = false;
                if (!pure_u1) continue;
                Sign s = ScalarOps<K>::sign(c);
                if (s == Sign::zero) continue;
                if (s == Sign::undecided)
                    throw PrecisionExhausted(
                        "vanishing on v=0 undecided at " + ex.str());
                throw CurveNotInvariant("remainder survives on v=0 at " +
                                        ex.str());
            }
    VectorField<K> out(vf.n, vf.B, std::move(g));
    out.straightened = true;
    return out;
}

}  // namespace fint

#endif
