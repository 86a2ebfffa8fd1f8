#include "fint/small_divisor.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

namespace fint {

namespace {

long small_exponent(int k) {
    switch (k) {
        case 1: return 2;
        case 2: return 8;
        case 3: return 768;
    }
    throw ScheduleOverflow("schedule exponent index " + std::to_string(k) +
                           " has no small form");
}

struct Reg {
    mpfr_t x;
    explicit Reg(mpfr_prec_t prec) { mpfr_init2(x, prec); }
    ~Reg() { mpfr_clear(x); }
    Reg(const Reg&) = delete;
    Reg& operator=(const Reg&) = delete;
};

mpfr_rnd_t rnd(Dir d) { return d == Dir::down ? MPFR_RNDD : MPFR_RNDU; }

Dir flip(Dir d) { return d == Dir::down ? Dir::up : Dir::down; }

mpz_class pow2_mpz(long e) {
    mpz_class t = 1;
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return t;
}

// Outputs come out as doubles, so 256 fractional bits of slack around the
// 771-bit integer parts is already far more than the final rounding keeps.
constexpr mpfr_prec_t kWidePrec = 1100;

double exp2_div_dir(double l, int d, Dir dir) {
    Reg t(kWidePrec);
    mpfr_set_d(t.x, l, MPFR_RNDN);
    mpfr_div_ui(t.x, t.x, static_cast<unsigned long>(d), rnd(dir));
    mpfr_exp2(t.x, t.x, rnd(dir));
    return mpfr_get_d(t.x, rnd(dir));
}

}  // namespace

mpz_class LiouvilleSchedule::exponent(int k) {
    if (k >= 1 && k <= 3) return mpz_class(small_exponent(k));
    if (k == 4) return pow2_mpz(770);  // 4 * 2^768
    throw ScheduleOverflow("schedule exponent a_" + std::to_string(k) +
                           " exceeds the materialization cap");
}

LiouvilleSchedule::Symbolic LiouvilleSchedule::symbolic(int k) {
    if (k < 2) throw Error("schedule recursion starts at index 2");
    return {static_cast<long>(k), k - 1};
}

std::vector<LiouvilleInstance> liouville_instances(const CertifiedZeta& z) {
    if (z.K < 1 || z.K > 3) throw ScheduleOverflow("unmaterialized zeta order");
    long aK = small_exponent(z.K);
    std::vector<LiouvilleInstance> out;
    for (int k = 1; k <= z.K; ++k) {
        long ak = small_exponent(k);
        LiouvilleInstance inst;
        inst.k = k;
        inst.q = pow2_mpz(ak);
        inst.p = 0;
        for (int j = 1; j <= k; ++j) inst.p += pow2_mpz(ak - small_exponent(j));
        // Exact remainder of the materialized partial sum past index k.
        mpz_class mant = 0;
        for (int j = k + 1; j <= z.K; ++j)
            mant += pow2_mpz(aK - small_exponent(j));
        Dyadic partial(mant, mpz_class(-aK));
        inst.lo = (k < z.K) ? partial : z.rad.mul_pow2(mpz_class(-1));
        inst.hi = Dyadic::add_dir(partial, z.rad, 800, Dir::up);
        Dyadic bound = Dyadic::pow2(mpz_class(-k) * ak);
        if (inst.lo.sign() <= 0 || Dyadic::cmp(inst.lo, inst.hi) > 0 ||
            Dyadic::cmp(inst.hi, bound) >= 0)
            throw Error("liouville bound fails at index " + std::to_string(k));
        out.push_back(std::move(inst));
    }
    return out;
}

CertifiedZeta liouville_zeta(int K) {
    if (K < 1 || K > 3)
        throw ScheduleOverflow("zeta partial sums materialize for K in [1,3]");
    long aK = small_exponent(K);
    mpz_class mant = 0;
    for (int j = 1; j <= K; ++j) mant += pow2_mpz(aK - small_exponent(j));
    CertifiedZeta z;
    z.K = K;
    z.mid = Dyadic(mant, mpz_class(-aK));
    z.rad = Dyadic::pow2(mpz_class(1) - LiouvilleSchedule::exponent(K + 1));
    liouville_instances(z);  // throws unless every convergent bound holds
    return z;
}

VectorField<Ball> counterexample_field(const CertifiedZeta& z, int m, int N) {
    if (m < 1) throw Error("integral multiplicity must be positive");
    if (N < 2) throw TruncationMismatch("counterexample needs order >= 2");
    JordanForm<Ball> B(std::vector<Ball>{Ball(1), -z.ball()});
    std::vector<TruncSeries<Ball>> f(3, TruncSeries<Ball>(3, N));
    for (int s = 2; s <= N; ++s) {
        Rational c = Rational(mpz_class(1), mpz_class(s)) *
                     pow(Rational(mpz_class(2), mpz_class(3)),
                         static_cast<unsigned long>(s));
        Ball cb = Ball::from_rational(c);
        for (int m2 = 0; m2 <= s; ++m2) {
            Exponent ex(3);
            ex[1] = static_cast<std::uint32_t>(m2);
            ex[2] = static_cast<std::uint32_t>(s - m2);
            f[0].add_term(ex, cb);
        }
    }
    VectorField<Ball> vf(3, std::move(B), std::move(f));
    vf.straightened = true;
    return vf;
}

std::vector<H2Coefficient> h2_coefficients(const CertifiedZeta& z, int m,
                                           const Rational& a_m,
                                           const std::vector<Exponent>& mstars) {
    if (m < 1) throw Error("integral multiplicity must be positive");
    Ball zb = z.ball();
    std::vector<H2Coefficient> out;
    out.reserve(mstars.size());
    for (const auto& ms : mstars) {
        if (ms.size() != 2) throw Error("tail exponent needs two entries");
        long m2 = static_cast<long>(ms[0]);
        long m3 = static_cast<long>(ms[1]);
        int s = ms.degree();
        if (s < 2) throw ValuationError("tail degree below the forcing range");
        Rational num = -Rational(mpz_class(m)) * a_m *
                       Rational(mpz_class(1), mpz_class(s)) *
                       pow(Rational(mpz_class(2), mpz_class(3)),
                           static_cast<unsigned long>(s));
        H2Coefficient rec;
        rec.mstar = ms;
        if (m3 == 0) {
            rec.exact = true;
            rec.value = num / Rational(mpz_class(m2));
            rec.enclosure = Ball::from_rational(rec.value);
        } else {
            Ball div = Ball::from_rational(Rational(mpz_class(m2))) -
                       Ball::from_rational(Rational(mpz_class(m3))) * zb;
            if (div.sign() == Sign::undecided)
                throw PrecisionExhausted("divisor sign undecided at (" +
                                         std::to_string(m2) + "," +
                                         std::to_string(m3) + ")");
            rec.enclosure = Ball::from_rational(num) / div;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

double log2_dyadic_dir(const Dyadic& x, Dir dir) {
    if (x.sign() <= 0) throw Error("log2 of a nonpositive value");
    Reg t(256), r(256), e(kWidePrec), s(kWidePrec);
    mpfr_set_z(t.x, x.mant().get_mpz_t(), rnd(dir));
    mpfr_log2(r.x, t.x, rnd(dir));
    mpfr_set_z(e.x, x.exp().get_mpz_t(), MPFR_RNDN);  // exact: <= 771 bits
    mpfr_add(s.x, r.x, e.x, rnd(dir));
    return mpfr_get_d(s.x, rnd(dir));
}

std::pair<double, double> log2_bounds(const Ball& x) {
    Dyadic lo = Dyadic::sub_dir(abs(x.mid()), x.rad(), kRadPrec, Dir::down);
    if (lo.sign() <= 0)
        throw PrecisionExhausted("log2 bounds need a ball separated from zero");
    return {log2_dyadic_dir(lo, Dir::down),
            log2_dyadic_dir(x.abs_upper(), Dir::up)};
}

std::vector<RootNorm> root_norms(
    const std::vector<std::pair<int, std::vector<Ball>>>& coeffs_by_degree) {
    std::vector<RootNorm> out;
    out.reserve(coeffs_by_degree.size());
    for (const auto& [d, balls] : coeffs_by_degree) {
        if (d < 1) throw Error("root norms need positive degree");
        RootNorm rec;
        rec.degree = d;
        Dyadic up, lo;
        for (const Ball& b : balls) {
            Dyadic u = b.abs_upper();
            if (Dyadic::cmp(u, up) > 0) up = u;
            Dyadic l =
                Dyadic::sub_dir(abs(b.mid()), b.rad(), kRadPrec, Dir::down);
            if (l.sign() > 0 && Dyadic::cmp(l, lo) > 0) lo = l;
        }
        if (up.sign() <= 0) {
            rec.zero = true;
            out.push_back(rec);
            continue;
        }
        rec.hi = exp2_div_dir(log2_dyadic_dir(up, Dir::up), d, Dir::up);
        if (lo.sign() > 0)
            rec.lo = exp2_div_dir(log2_dyadic_dir(lo, Dir::down), d, Dir::down);
        out.push_back(rec);
    }
    return out;
}

DivergenceCertificate divergence_certificate(int kmax, int m) {
    if (kmax < 1 || kmax > 3)
        throw ScheduleOverflow("divisor collapse is materialized for k in [1,3]");
    if (m < 1) throw Error("integral multiplicity must be positive");
    DivergenceCertificate cert;
    cert.m = m;
    for (int k = 1; k <= kmax; ++k) {
        long ak = small_exponent(k);
        mpz_class ak1 = LiouvilleSchedule::exponent(k + 1);
        DivergenceRecord rec;
        rec.k = k;
        rec.q = pow2_mpz(ak);
        rec.p = 0;
        for (int j = 1; j <= k; ++j) rec.p += pow2_mpz(ak - small_exponent(j));
        rec.d = rec.p + rec.q + m - 1;
        rec.divisor_log2 = mpz_class(ak) - ak1;
        // log2(1 + delta) for the geometric tail past the leading remainder
        // term: 2^-759 absorbs it at k = 1, 2^-1000 far past it beyond.
        rec.divisor_log2_corr =
            (k == 1) ? std::ldexp(1.0, -759) : std::ldexp(1.0, -1000);

        // log2 r = (a_{k+1} - a_k - [0, corr] + log2 m - log2 s
        //           - s log2(3/2)) / d  with s = p + q.
        mpz_class A = ak1 - ak;
        mpz_class s = rec.p + rec.q;
        auto endpoint = [&](Dir dir) {
            Reg acc(kWidePrec), t(kWidePrec), sreg(kWidePrec), dreg(kWidePrec);
            mpfr_set_z(acc.x, A.get_mpz_t(), MPFR_RNDN);  // exact
            if (dir == Dir::down)
                mpfr_sub_d(acc.x, acc.x, rec.divisor_log2_corr, rnd(dir));
            mpfr_set_ui(t.x, static_cast<unsigned long>(m), MPFR_RNDN);
            mpfr_log2(t.x, t.x, rnd(dir));
            mpfr_add(acc.x, acc.x, t.x, rnd(dir));
            mpfr_set_z(sreg.x, s.get_mpz_t(), MPFR_RNDN);  // exact
            mpfr_log2(t.x, sreg.x, rnd(flip(dir)));
            mpfr_sub(acc.x, acc.x, t.x, rnd(dir));
            mpfr_set_d(t.x, 1.5, MPFR_RNDN);
            mpfr_log2(t.x, t.x, rnd(flip(dir)));
            mpfr_mul(t.x, t.x, sreg.x, rnd(flip(dir)));
            mpfr_sub(acc.x, acc.x, t.x, rnd(dir));
            mpfr_set_z(dreg.x, rec.d.get_mpz_t(), MPFR_RNDN);  // exact
            mpfr_div(acc.x, acc.x, dreg.x, rnd(dir));
            return mpfr_get_d(acc.x, rnd(dir));
        };
        rec.log2r_lo = endpoint(Dir::down);
        rec.log2r_hi = endpoint(Dir::up);
        cert.records.push_back(std::move(rec));
    }
    for (std::size_t i = 1; i < cert.records.size(); ++i)
        if (!(cert.records[i].log2r_lo > cert.records[i - 1].log2r_hi))
            throw Error("root norm growth not certified");
    return cert;
}

}  // namespace fint
