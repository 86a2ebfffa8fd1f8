#ifndef FINT_TESTS_CRITERIA_HPP
#define FINT_TESTS_CRITERIA_HPP

// Checks shared between the unit suites and the acceptance runner.  Each
// returns a small result struct instead of asserting, so both frontends can
// report in their own style.

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fint/first_integral.hpp"
#include "fint/flow.hpp"
#include "fint/homological.hpp"
#include "fint/resonance.hpp"
#include "fint/singular_curve.hpp"
#include "support/dense_oracle.hpp"
#include "support/naive_poly.hpp"

namespace checks {

using namespace fint;

struct CheckResult {
    int cases = 0;
    int failures = 0;
    std::string detail;
    bool ok() const { return failures == 0 && cases > 0; }
};

inline dense::Basis block_basis(int n, int p, int r) {
    std::vector<Exponent> list;
    for (const auto& q :
         exponents_of_degree(static_cast<std::size_t>(n - 1), r)) {
        Exponent ex(static_cast<std::size_t>(n));
        ex[0] = static_cast<std::uint32_t>(p);
        for (int j = 0; j < n - 1; ++j) ex[j + 1] = q[j];
        list.push_back(ex);
    }
    return dense::Basis(std::move(list));
}

// Oracle action of <By, d/dy> built from the dense matrix entries by
// symbolic differentiation of each basis monomial.
inline dense::Action dense_tail_action(const JordanForm<Rational>& B) {
    int k = static_cast<int>(B.size());
    RationalMatrix Bd(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) Bd(i, j) = Rational(0);
    for (int i = 0; i < k; ++i) Bd(i, i) = B.diag[i];
    for (int i = 0; i + 1 < k; ++i)
        if (B.super[i]) Bd(i, i + 1) = Rational(1);
    return [Bd, k](const Exponent& ex) {
        std::vector<std::pair<Exponent, Rational>> out;
        for (int i = 0; i < k; ++i) {
            if (ex[i + 1] == 0) continue;
            Rational qi(static_cast<long>(ex[i + 1]));
            for (int c = 0; c < k; ++c) {
                if (Bd(i, c).is_zero()) continue;
                Exponent e2 = ex;
                e2[i + 1] -= 1;
                e2[c + 1] += 1;
                out.emplace_back(e2, qi * Bd(i, c));
            }
        }
        return out;
    };
}

inline bool poly_eq(const HomogPoly<Rational>& a, const HomogPoly<Rational>& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin();
    for (auto ib = b.terms.begin(); ib != b.terms.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

inline HomogPoly<Rational> random_block_poly(std::mt19937_64& rng,
                                             const dense::Basis& basis,
                                             int nvars, int deg) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    HomogPoly<Rational> p(nvars, deg);
    for (const auto& ex : basis.list)
        p.add_term(ex, Rational(num(rng), den(rng)));
    return p;
}

// Criterion: triangular homological solve == dense LU on the monomial basis
// for every tail dimension <= 3 and y-degree <= 6, Jordan chains included.
inline CheckResult homological_dense_equivalence() {
    CheckResult res;
    std::mt19937_64 rng(160311);
    std::uniform_int_distribution<long> num(1, 7), den(1, 5);

    std::vector<JordanForm<Rational>> forms;
    for (int k = 1; k <= 3; ++k) {
        // two random same-sign diagonal forms per dimension
        for (int rep = 0; rep < 2; ++rep) {
            std::vector<Rational> d;
            for (int i = 0; i < k; ++i)
                d.push_back(Rational(-num(rng), den(rng)));
            forms.emplace_back(std::move(d));
        }
    }
    {
        JordanForm<Rational> j2(
            std::vector<Rational>{Rational(-1), Rational(-1)});
        j2.set_chain(0);
        forms.push_back(j2);
        JordanForm<Rational> j3(std::vector<Rational>{
            Rational(-2), Rational(-2), Rational(-5)});
        j3.set_chain(0);
        forms.push_back(j3);
        JordanForm<Rational> j3full(std::vector<Rational>{
            Rational(-3, 2), Rational(-3, 2), Rational(-3, 2)});
        j3full.set_chain(0);
        j3full.set_chain(1);
        forms.push_back(j3full);
    }

    std::ostringstream detail;
    for (const auto& B : forms) {
        int n = static_cast<int>(B.size()) + 1;
        for (int r = 1; r <= 6; ++r) {
            for (int p : {0, 2}) {
                dense::Basis basis = block_basis(n, p, r);
                RationalMatrix M =
                    dense::assemble_matrix(basis, dense_tail_action(B));
                HomogPoly<Rational> rhs =
                    random_block_poly(rng, basis, n, p + r);
                RationalVector x =
                    dense::lu_solve(M, dense::poly_to_vec(basis, rhs));
                HomogPoly<Rational> want =
                    dense::vec_to_poly(basis, x, n, p + r);
                HomOperator<Rational> op = assemble(B, p, r);
                HomogPoly<Rational> got = solve(op, rhs);
                ++res.cases;
                bool match = poly_eq(got, want) &&
                             poly_eq(apply(op, got), rhs);
                if (!match) {
                    ++res.failures;
                    detail << "mismatch at tail dim " << n - 1 << " r=" << r
                           << " p=" << p << "\n";
                }
            }
        }
    }
    res.detail = detail.str();
    return res;
}

// Criterion companion: operator_spectrum equals the eigenvalue multiset of
// the dense operator matrix, compared exactly through characteristic
// polynomials.
inline CheckResult spectrum_dense_equivalence() {
    CheckResult res;
    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<long> entry(-4, 4), diag(-6, 6);
    std::ostringstream detail;

    for (int n : {2, 3}) {
        for (int p : {1, 2}) {
            for (int r = 1; r <= 3; ++r) {
                // random triangular M1 (n x n), M2 (p x p)
                RationalMatrix M1(n, n), M2(p, p);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        M1(i, j) = j > i ? Rational(entry(rng)) : Rational(0);
                for (int i = 0; i < n; ++i) M1(i, i) = Rational(diag(rng));
                for (int i = 0; i < p; ++i)
                    for (int j = 0; j < p; ++j)
                        M2(i, j) = j > i ? Rational(entry(rng)) : Rational(0);
                for (int i = 0; i < p; ++i) M2(i, i) = Rational(diag(rng));

                std::vector<Rational> mu, nu;
                for (int i = 0; i < n; ++i) mu.push_back(M1(i, i));
                for (int i = 0; i < p; ++i) nu.push_back(M2(i, i));

                // basis: (degree-r monomial in n vars) x (component (of) p)
                auto monos =
                    exponents_of_degree(static_cast<std::size_t>(n), r);
                int dim = static_cast<int>(monos.size()) * p;
                std::map<std::pair<Exponent, int>, int> index;
                {
                    int idx = 0;
                    for (const auto& m : monos)
                        for (int j = 0; j < p; ++j)
                            index[{m, j}] = idx++;
                }
                RationalMatrix L(dim, dim);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) L(i, j) = Rational(0);
                for (const auto& m : monos) {
                    for (int j = 0; j < p; ++j) {
                        int col = index.at({m, j});
                        // <grad(x^m e_j), M1 x>
                        for (int i = 0; i < n; ++i) {
                            if (m[static_cast<std::size_t>(i)] == 0) continue;
                            Rational ki(static_cast<long>(
                                m[static_cast<std::size_t>(i)]));
                            for (int c = 0; c < n; ++c) {
                                if (M1(i, c).is_zero()) continue;
                                Exponent e2 = m;
                                e2[static_cast<std::size_t>(i)] -= 1;
                                e2[static_cast<std::size_t>(c)] += 1;
                                L(index.at({e2, j}), col) += ki * M1(i, c);
                            }
                        }
                        // -(M2 h)_l picks component j of h into row l
                        for (int l = 0; l < p; ++l) {
                            if (M2(l, j).is_zero()) continue;
                            L(index.at({m, l}), col) -= M2(l, j);
                        }
                    }
                }
                auto want = dense::char_poly(L);
                auto got = dense::poly_from_roots(
                    operator_spectrum(mu, nu, r));
                ++res.cases;
                if (want != got) {
                    ++res.failures;
                    detail << "char poly mismatch n=" << n << " p=" << p
                           << " r=" << r << "\n";
                }
            }
        }
    }
    res.detail = detail.str();
    return res;
}

// Random straightened field: same-sign rational tail eigenvalues (with an
// occasional Jordan chain), every remainder monomial of degree in [2, N]
// touching at least one y variable.
inline VectorField<Rational> random_straightened_field(std::mt19937_64& rng,
                                                       int n, int N,
                                                       int terms_per_comp = 6) {
    std::uniform_int_distribution<long> num(1, 6), den(1, 4), cnum(-5, 5);
    std::uniform_int_distribution<int> degd(2, N), vard(0, n - 1);

    JordanForm<Rational> B(std::vector<Rational>{});
    {
        std::vector<Rational> d;
        for (int i = 0; i < n - 1; ++i)
            d.push_back(Rational(-num(rng), den(rng)));
        // occasional chain: make two neighbours equal and flag them
        bool chain = (n >= 3) && (rng() % 3 == 0);
        if (chain) d[1] = d[0];
        B = JordanForm<Rational>(std::move(d));
        if (chain) B.set_chain(0);
    }

    std::vector<TruncSeries<Rational>> f;
    for (int i = 0; i < n; ++i) {
        TruncSeries<Rational> fi(n, N);
        for (int t = 0; t < terms_per_comp; ++t) {
            int d = degd(rng);
            // random exponent of total degree d with >= 1 on some y slot
            Exponent ex(static_cast<std::size_t>(n));
            int ytarget = 1 + static_cast<int>(rng() % (n - 1));
            ex[static_cast<std::size_t>(ytarget)] = 1;
            for (int rest = d - 1; rest > 0; --rest)
                ex[static_cast<std::size_t>(vard(rng))] += 1;
            long c = cnum(rng);
            if (c == 0) c = 1;
            fi.add_term(ex, Rational(c, den(rng)));
        }
        f.push_back(std::move(fi));
    }
    VectorField<Rational> vf(n, B, std::move(f));
    vf.straightened = vf.vanishes_on_axis();
    return vf;
}

// Criterion: build_first_integral leaves an exactly zero residual through
// degree N on a generated suite of straightened systems.
inline CheckResult exact_residual_suite(int systems, int N,
                                        double* max_seconds = nullptr) {
    CheckResult res;
    std::mt19937_64 rng(90210);
    std::ostringstream detail;
    double worst = 0.0;
    for (int s = 0; s < systems; ++s) {
        int n = 2 + s % 3;
        auto vf = random_straightened_field(rng, n, N);
        auto t0 = std::chrono::steady_clock::now();
        auto fir = build_first_integral(vf, N);
        auto r = residual(vf, fir.H, N);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (secs > worst) worst = secs;
        ++res.cases;
        if (!r.is_zero() || fir.residual_valuation != N + 1) {
            ++res.failures;
            detail << "nonzero residual: system " << s << " (n=" << n << ")\n";
        }
    }
    if (max_seconds) *max_seconds = worst;
    res.detail = detail.str();
    return res;
}

// Stacked dense oracle: all graded first-integral equations through degree N
// as one exact linear system over the monomials with |q| >= 1, solved by LU.
// The field action is evaluated with the naive flat-polynomial engine.
inline TruncSeries<Rational> dense_first_integral(
    const VectorField<Rational>& vf, int N, int m, const Rational& a_m) {
    int n = vf.n;
    // full field components as naive polys, linear tail rows included
    std::vector<naive::Poly> F(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d <= vf.f[i].trunc(); ++d)
            for (const auto& [ex, c] : vf.f[i].part(d).terms)
                naive::addto(F[static_cast<std::size_t>(i)], ex.e, c.raw());
        if (i >= 1) {
            naive::Exp ey(static_cast<std::size_t>(n), 0);
            ey[static_cast<std::size_t>(i)] = 1;
            naive::addto(F[static_cast<std::size_t>(i)], ey,
                         vf.B.diag[static_cast<std::size_t>(i - 1)].raw());
            if (i < n - 1 && vf.B.super[static_cast<std::size_t>(i - 1)]) {
                naive::Exp ec(static_cast<std::size_t>(n), 0);
                ec[static_cast<std::size_t>(i + 1)] = 1;
                naive::addto(F[static_cast<std::size_t>(i)], ec, mpq_class(1));
            }
        }
    }
    auto lie = [&](const naive::Exp& e) {
        naive::Poly img;
        for (int i = 0; i < n; ++i) {
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            naive::Poly mono;
            mono.emplace(e, mpq_class(1));
            img = naive::add(
                img, naive::mul(naive::diff(mono, static_cast<std::size_t>(i)),
                                F[static_cast<std::size_t>(i)]));
        }
        return naive::trunc(img, N);
    };

    // unknowns: monomials of degree m+1..N with |q| >= 1
    std::vector<Exponent> unk;
    for (int d = m + 1; d <= N; ++d)
        for (const auto& ex :
             exponents_of_degree(static_cast<std::size_t>(n), d)) {
            int q = 0;
            for (std::size_t j = 1; j < ex.size(); ++j)
                q += static_cast<int>(ex[j]);
            if (q >= 1) unk.push_back(ex);
        }
    std::map<Exponent, int> uidx;
    for (int i = 0; i < static_cast<int>(unk.size()); ++i)
        uidx.emplace(unk[i], i);

    int dim = static_cast<int>(unk.size());
    RationalMatrix M(dim, dim);
    RationalVector rhs(dim);
    for (int i = 0; i < dim; ++i) {
        rhs(i) = Rational(0);
        for (int j = 0; j < dim; ++j) M(i, j) = Rational(0);
    }
    for (int j = 0; j < dim; ++j)
        for (const auto& [e, c] : lie(unk[static_cast<std::size_t>(j)].e)) {
            Exponent ex;
            ex.e = e;
            auto it = uidx.find(ex);
            if (it != uidx.end()) M(it->second, j) += Rational(mpq_class(c));
        }
    {
        naive::Exp lead(static_cast<std::size_t>(n), 0);
        lead[0] = static_cast<std::uint32_t>(m);
        for (const auto& [e, c] : lie(lead)) {
            Exponent ex;
            ex.e = e;
            auto it = uidx.find(ex);
            if (it != uidx.end())
                rhs(it->second) -= a_m * Rational(mpq_class(c));
        }
    }
    RationalVector x = dense::lu_solve(M, rhs);
    TruncSeries<Rational> H(n, N);
    {
        Exponent lead(static_cast<std::size_t>(n));
        lead[0] = static_cast<std::uint32_t>(m);
        H.add_term(lead, a_m);
    }
    for (int i = 0; i < dim; ++i) H.add_term(unk[static_cast<std::size_t>(i)], x(i));
    return H;
}

inline bool series_eq(const TruncSeries<Rational>& a,
                      const TruncSeries<Rational>& b) {
    if (a.nvars() != b.nvars() || a.trunc() != b.trunc()) return false;
    for (int d = 0; d <= a.trunc(); ++d)
        if (!poly_eq(a.part(d), b.part(d))) return false;
    return true;
}

inline CheckResult integral_dense_equivalence() {
    CheckResult res;
    std::mt19937_64 rng(777001);
    std::ostringstream detail;
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 3; ++rep) {
            int N = 6;
            auto vf = random_straightened_field(rng, n, N, 4);
            auto fir = build_first_integral(vf, N);
            auto want = dense_first_integral(vf, N, 1, Rational(1));
            ++res.cases;
            if (!series_eq(fir.H, want)) {
                ++res.failures;
                detail << "stacked-system mismatch n=" << n << " rep=" << rep
                       << "\n";
            }
        }
    }
    res.detail = detail.str();
    return res;
}

// Criterion: fully nonresonant rational spectrum certifies trivial kernels;
// per-degree minimum divisors match an independent brute force.
inline CheckResult trivial_kernel_check(const std::vector<Rational>& lambda,
                                   int N) {
    CheckResult res;
    std::ostringstream detail;
    NonintegrabilityReport rep = nonintegrability_report(lambda, N);
    std::size_t n = lambda.size();
    for (int d = 1; d <= N; ++d) {
        // independent brute force over all compositions of d into n parts
        bool have = false;
        mpq_class best;
        // iterate all compositions of d into n parts
        std::vector<int> comp(n, 0);
        comp[0] = d;
        while (true) {
            mpq_class v(0);
            for (std::size_t i = 0; i < n; ++i)
                v += mpq_class(comp[i]) * lambda[i].raw();
            if (v < 0) v = -v;
            if (!have || v < best) {
                best = v;
                have = true;
            }
            // next composition
            std::size_t i = 0;
            while (i + 1 < n && comp[i] == 0) ++i;
            if (i + 1 >= n) break;
            int take = comp[i];
            comp[i] = 0;
            comp[i + 1] += 1;
            comp[0] = take - 1;
        }
        ++res.cases;
        bool ok = have && best > 0 &&
                  rep.min_abs[static_cast<std::size_t>(d - 1)].raw() == best;
        // dense kernel rank at small degrees: operator must be invertible
        if (ok && d <= 8) {
            auto monos = exponents_of_degree(n, d);
            dense::Basis basis{std::vector<Exponent>(monos.begin(), monos.end())};
            dense::Action act = [&](const Exponent& ex) {
                std::vector<std::pair<Exponent, Rational>> out;
                Rational acc(0);
                for (std::size_t i = 0; i < n; ++i)
                    acc += lambda[i] * Rational(static_cast<long>(ex[i]));
                out.emplace_back(ex, acc);
                return out;
            };
            RationalMatrix L = dense::assemble_matrix(basis, act);
            Eigen::FullPivLU<RationalMatrix> lu(L);
            if (lu.rank() != L.rows()) ok = false;
        }
        if (!ok) {
            ++res.failures;
            detail << "divisor mismatch at degree " << d << "\n";
        }
    }
    res.detail = detail.str();
    return res;
}

// Independent curve oracle: Picard iteration phi <- -B^{-1} g(x1, phi) on
// the naive engine, every degree solved densely by LU.  Converges one degree
// per sweep, so N sweeps pin everything through degree N.
inline std::vector<naive::Poly> picard_curve_oracle(
    const VectorField<Rational>& vf, int N) {
    int m = vf.n - 1;
    RationalMatrix B(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) B(i, j) = Rational(0);
    for (int i = 0; i < m; ++i) B(i, i) = vf.B.diag[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i)
        if (vf.B.super[static_cast<std::size_t>(i)]) B(i, i + 1) = Rational(1);

    std::vector<naive::Poly> g(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int d = 0; d <= vf.f[static_cast<std::size_t>(i) + 1].trunc(); ++d)
            for (const auto& [ex, c] :
                 vf.f[static_cast<std::size_t>(i) + 1].part(d).terms)
                naive::addto(g[static_cast<std::size_t>(i)], ex.e, c.raw());

    std::vector<naive::Poly> phi(static_cast<std::size_t>(m));
    for (int sweep = 0; sweep < N; ++sweep) {
        std::vector<naive::Poly> args;
        naive::Poly x1;
        x1.emplace(naive::Exp{1}, mpq_class(1));
        args.push_back(std::move(x1));
        for (const auto& p : phi) args.push_back(p);
        std::vector<naive::Poly> next(static_cast<std::size_t>(m));
        std::vector<naive::Poly> rows(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            rows[static_cast<std::size_t>(i)] = naive::trunc(
                naive::compose(g[static_cast<std::size_t>(i)], args, 1), N);
        for (int d = 2; d <= N; ++d) {
            RationalVector rhs(m);
            for (int i = 0; i < m; ++i) {
                naive::Exp e{static_cast<std::uint32_t>(d)};
                auto it = rows[static_cast<std::size_t>(i)].find(e);
                rhs(i) = it == rows[static_cast<std::size_t>(i)].end()
                             ? Rational(0)
                             : -Rational(it->second);
            }
            RationalVector x = dense::lu_solve(B, rhs);
            for (int i = 0; i < m; ++i)
                if (!x(i).is_zero())
                    naive::addto(next[static_cast<std::size_t>(i)],
                                 naive::Exp{static_cast<std::uint32_t>(d)},
                                 x(i).raw());
        }
        phi = std::move(next);
    }
    return phi;
}

inline bool curve_matches_naive(const SeriesCurve<Rational>& curve,
                                const std::vector<naive::Poly>& want, int N) {
    if (curve.phi.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i) {
        naive::Poly got;
        for (int d = 0; d <= N; ++d)
            for (const auto& [ex, c] : curve.phi[i].part(d).terms)
                naive::addto(got, ex.e, c.raw());
        if (got != naive::trunc(want[i], N)) return false;
    }
    return true;
}

// Field vanishing on a planted curve: F = M(x) * (y - phi(x1)) plus the tail
// rows B(y - phi), with M a random series matrix of valuation >= 1.
struct PlantedSystem {
    VectorField<Rational> vf;
    SeriesCurve<Rational> curve;
};

inline PlantedSystem plant_curve_system(std::mt19937_64& rng, int n, int N,
                                        int curve_deg) {
    std::uniform_int_distribution<long> num(1, 5), den(1, 3), cnum(-4, 4);
    std::uniform_int_distribution<int> vard(0, n - 1);

    SeriesCurve<Rational> curve(n, N);
    for (int i = 0; i < n - 1; ++i) {
        curve.phi[static_cast<std::size_t>(i)].add_term(
            Exponent{2u}, Rational(cnum(rng) * 2 + 1, den(rng)));
        for (int d = 3; d <= curve_deg; ++d) {
            long c = cnum(rng);
            if (c == 0) continue;
            curve.phi[static_cast<std::size_t>(i)].add_term(
                Exponent{static_cast<std::uint32_t>(d)}, Rational(c, den(rng)));
        }
    }

    JordanForm<Rational> B(std::vector<Rational>{});
    {
        std::vector<Rational> diag;
        for (int i = 0; i < n - 1; ++i)
            diag.push_back(Rational(-num(rng), den(rng)));
        bool chain = (n >= 3) && (rng() % 3 == 0);
        if (chain) diag[1] = diag[0];
        B = JordanForm<Rational>(std::move(diag));
        if (chain) B.set_chain(0);
    }

    // y_j - phi_j as full-variable series
    std::vector<TruncSeries<Rational>> yphi;
    for (int j = 0; j < n - 1; ++j) {
        TruncSeries<Rational> t = -detail::lift_x1(
            curve.phi[static_cast<std::size_t>(j)], n);
        t.add_term(unit_exponent(static_cast<std::size_t>(n),
                                 static_cast<std::size_t>(j) + 1),
                   Rational(1));
        yphi.push_back(std::move(t));
    }

    auto random_entry = [&](bool allow_zero) {
        TruncSeries<Rational> e(n, N);
        int terms = allow_zero ? static_cast<int>(rng() % 3)
                               : 1 + static_cast<int>(rng() % 2);
        for (int t = 0; t < terms; ++t) {
            int d = 1 + static_cast<int>(rng() % 3);
            Exponent ex(static_cast<std::size_t>(n));
            for (int k = 0; k < d; ++k)
                ex[static_cast<std::size_t>(vard(rng))] += 1;
            long c = cnum(rng);
            if (c == 0) c = 1;
            e.add_term(ex, Rational(c, den(rng)));
        }
        return e;
    };

    std::vector<TruncSeries<Rational>> f;
    for (int i = 0; i < n; ++i) {
        TruncSeries<Rational> fi(n, N);
        for (int j = 0; j < n - 1; ++j) {
            TruncSeries<Rational> mij = random_entry(i != 0 || j != 0);
            if (mij.is_zero()) continue;
            fi = fi + mul(mij, yphi[static_cast<std::size_t>(j)], N);
        }
        if (i >= 1) {
            int t = i - 1;
            TruncSeries<Rational> bphi = scale(
                curve.phi[static_cast<std::size_t>(t)],
                B.diag[static_cast<std::size_t>(t)]);
            if (B.super[static_cast<std::size_t>(t)])
                bphi = bphi + curve.phi[static_cast<std::size_t>(t) + 1];
            fi = fi - detail::lift_x1(bphi, n);
        }
        f.push_back(std::move(fi));
    }
    return {VectorField<Rational>(n, B, std::move(f)), std::move(curve)};
}

// Criterion: the planted pipeline end to end.  solve_curve recovers the
// planted curve exactly, the restriction of f1 vanishes, the straightened
// field vanishes on v=0, and the subsequent integral has full residual
// valuation.
inline CheckResult planted_pipeline_suite(int count, int N, int curve_deg) {
    CheckResult res;
    std::mt19937_64 rng(424242);
    std::ostringstream detail;
    for (int s = 0; s < count; ++s) {
        int n = 2 + s % 3;
        auto sys = plant_curve_system(rng, n, N, curve_deg);
        ++res.cases;
        std::string fail;
        try {
            auto got = solve_curve(sys.vf, N);
            for (int i = 0; i < n - 1; ++i)
                if (!series_eq(got.phi[static_cast<std::size_t>(i)],
                               sys.curve.phi[static_cast<std::size_t>(i)]))
                    fail = "curve not recovered";
            auto verdict = nonisolated_check(sys.vf, got, N);
            if (!verdict.nonisolated) fail = "restriction does not vanish";
            auto st = straighten(sys.vf, got);
            if (!st.straightened || !st.vanishes_on_axis())
                fail = "straightened field does not vanish on v=0";
            // conjugacy: pushing forward along the negated curve restores
            // the original remainder
            SeriesCurve<Rational> neg(n, N);
            for (int i = 0; i < n - 1; ++i)
                neg.phi[static_cast<std::size_t>(i)] =
                    scale(got.phi[static_cast<std::size_t>(i)], Rational(-1));
            auto back = fint::detail::pushforward_components(st, neg);
            for (int i = 0; i < n; ++i)
                if (!series_eq(back[static_cast<std::size_t>(i)],
                               sys.vf.f[static_cast<std::size_t>(i)]))
                    fail = "inverse substitution does not restore the field";
            auto fir = build_first_integral(st, N);
            if (fir.residual_valuation != N + 1)
                fail = "integral residual valuation short";
        } catch (const Error& e) {
            fail = e.what();
        }
        if (!fail.empty()) {
            ++res.failures;
            detail << "planted system " << s << " (n=" << n << "): " << fail
                   << "\n";
        }
    }
    res.detail = detail.str();
    return res;
}

// Criterion companion: an isolated singular point is reported as an
// obstruction at the first surviving degree of f1 on the curve.
// Numerical shadow of residual valuation N + 1: halving the start radius
// divides the conservation drift of the degree-N integral by about 2^{N+1}.
inline CheckResult drift_scaling_check() {
    CheckResult res;
    const int N = 12;
    JordanForm<Rational> B({Rational(-1)});
    std::vector<TruncSeries<Rational>> f(2, TruncSeries<Rational>(2, N));
    f[0].add_term(Exponent{1u, 1u}, Rational(1));
    f[1].add_term(Exponent{1u, 1u}, Rational(1));
    VectorField<Rational> vf(2, B, std::move(f));
    vf.straightened = true;
    auto fir = build_first_integral(vf, N);
    auto ff = snapshot(vf, 1.0);
    const double T = 5.0, h = 1e-3;
    double d1 = conservation_drift(fir.H, integrate(ff, {0.1, 0.1}, T, h));
    double d2 = conservation_drift(fir.H, integrate(ff, {0.05, 0.05}, T, h));
    ++res.cases;
    double want = std::ldexp(1.0, N + 1);
    double ratio = d2 > 0.0 ? d1 / d2 : 0.0;
    if (!(ratio >= want / 4.0 && ratio <= want * 4.0)) ++res.failures;
    std::ostringstream os;
    os << "drift " << d1 << " at radius 0.1, " << d2
       << " at radius 0.05, ratio " << ratio << ", window [" << want / 4.0
       << ", " << want * 4.0 << "]\n";
    res.detail = os.str();
    return res;
}

inline CheckResult isolated_obstruction_check() {
    CheckResult res;
    int N = 6;
    JordanForm<Rational> B({Rational(-1)});
    std::vector<TruncSeries<Rational>> f(2, TruncSeries<Rational>(2, N));
    f[0].add_term(Exponent{2u, 0u}, Rational(1));
    VectorField<Rational> vf(2, B, std::move(f));
    ++res.cases;
    auto curve = solve_curve(vf, N);
    auto verdict = nonisolated_check(vf, curve, N);
    bool ok = !verdict.nonisolated && verdict.witness_degree == 2 &&
              verdict.witness == Rational(1);
    bool threw = false;
    try {
        straighten(vf, curve);
    } catch (const CurveNotInvariant&) {
        threw = true;
    }
    if (!ok || !threw) {
        ++res.failures;
        res.detail = "isolated point not reported at degree 2\n";
    }
    return res;
}

}  // namespace checks

#endif
