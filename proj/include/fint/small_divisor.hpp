#ifndef FINT_SMALL_DIVISOR_HPP
#define FINT_SMALL_DIVISOR_HPP

#include <utility>
#include <vector>

#include "fint/ball.hpp"
#include "fint/vector_field.hpp"

namespace fint {

// Exponent schedule a_1 = 2, a_{k+1} = (k+1) * 2^{a_k}.  The first four
// entries are plain integers (a_4 already has 771 bits); beyond that only
// the symbolic shape (factor, base index) is available.
struct LiouvilleSchedule {
    static constexpr int materialization_cap = 4;

    static mpz_class exponent(int k);

    struct Symbolic {
        long factor;     // a_k = factor * 2^{a_{base}}
        int base;
    };
    static Symbolic symbolic(int k);
};

// Enclosure of zeta = sum_{k>=1} 2^{-a_k}: exact dyadic partial sum plus a
// geometric tail radius.
struct CertifiedZeta {
    int K = 0;
    Dyadic mid;  // sum_{k<=K} 2^{-a_k}
    Dyadic rad;  // 2 * 2^{-a_{K+1}}

    Ball ball() const { return Ball(mid, rad); }
};

CertifiedZeta liouville_zeta(int K);

// Certified bounds on zeta - p_k/q_k for the convergent with q_k = 2^{a_k}.
// The Liouville inequality 0 < zeta - p/q < q^{-k} is checked on
// construction of the enclosure.
struct LiouvilleInstance {
    int k = 0;
    mpz_class p, q;
    Dyadic lo, hi;  // zeta - p/q lies in [lo, hi]
};

std::vector<LiouvilleInstance> liouville_instances(const CertifiedZeta& z);

// The three-variable field dx1/dt = f1(y), dy/dt = diag(1, -zeta) y with
// every coefficient of y^{m*}, |m*| = s, equal to (1/s)(2/3)^s.
VectorField<Ball> counterexample_field(const CertifiedZeta& z, int m, int N);

// Closed-form degree-(m+s-1) coefficient of x1^{m-1} y^{m*} in the formal
// first integral: -m a_m (1/s)(2/3)^s / (m2 - m3 zeta).  Exact rational when
// the divisor is zeta-free.
struct H2Coefficient {
    Exponent mstar;
    bool exact = false;
    Rational value;  // set iff exact
    Ball enclosure;
};

std::vector<H2Coefficient> h2_coefficients(const CertifiedZeta& z, int m,
                                           const Rational& a_m,
                                           const std::vector<Exponent>& mstars);

// Per-degree root norm r_d = (max |c|)^{1/d} as a double interval.
struct RootNorm {
    int degree = 0;
    bool zero = false;
    double lo = 0.0, hi = 0.0;
};

std::vector<RootNorm> root_norms(
    const std::vector<std::pair<int, std::vector<Ball>>>& coeffs_by_degree);

// log2 |x| over the ball, requires 0 outside the ball.
std::pair<double, double> log2_bounds(const Ball& x);

// Directed log2 of a positive dyadic (result must fit a double).
double log2_dyadic_dir(const Dyadic& x, Dir dir);

// Divergence evidence along the schedule subsequence: at degree
// d_k = p_k + q_k + m - 1 the divisor p_k - q_k zeta collapses like
// 2^{a_k - a_{k+1}}, so the root norm of the closed-form coefficient grows.
// Everything is computed on log2 values; 2^{a_k} is never materialized
// beyond k = 3.
struct DivergenceRecord {
    int k = 0;
    mpz_class p, q, d;
    mpz_class divisor_log2;    // exact: log2 |p - q zeta| >= divisor_log2
    double divisor_log2_corr;  // ... and <= divisor_log2 + corr
    double log2r_lo = 0.0, log2r_hi = 0.0;
};

struct DivergenceCertificate {
    int m = 1;
    std::vector<DivergenceRecord> records;
};

DivergenceCertificate divergence_certificate(int kmax, int m = 1);

}  // namespace fint

#endif
