#ifndef FINT_DYADIC_HPP
#define FINT_DYADIC_HPP

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <utility>

#include "fint/errors.hpp"

namespace fint {

enum class Dir { down, up };  // rounding direction on the value axis

// Dyadic number mant * 2^exp with an arbitrary-precision exponent.  The
// doubly exponential schedule produces exponents near +-2^770, far outside
// any fixed-width (or even MPFR) exponent range, so exp is an mpz.
//
// All arithmetic here is either exact or explicitly directed, and no
// operation ever materializes an exponent gap: alignment is done through
// split(), which does bounded work no matter how far apart the scales are.
class Dyadic {
  public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(long m) : mant_(m), exp_(0) { normalize(); }
    Dyadic(const mpz_class& m, mpz_class e) : mant_(m), exp_(std::move(e)) {
        normalize();
    }

    static Dyadic pow2(const mpz_class& e) { return Dyadic(mpz_class(1), e); }

    const mpz_class& mant() const { return mant_; }
    const mpz_class& exp() const { return exp_; }

    bool is_zero() const { return sgn(mant_) == 0; }
    int sign() const { return sgn(mant_); }

    // Mantissa bit length; 0 for zero.
    unsigned long len() const {
        return is_zero() ? 0 : mpz_sizeinbase(mant_.get_mpz_t(), 2);
    }

    // 2^(mag-1) <= |x| < 2^mag for nonzero x.
    mpz_class mag() const { return exp_ + static_cast<unsigned long>(len()); }

    Dyadic operator-() const {
        Dyadic r;
        r.mant_ = -mant_;
        r.exp_ = exp_;
        return r;
    }
    friend Dyadic abs(const Dyadic& a) { return a.sign() < 0 ? -a : a; }

    Dyadic mul_pow2(const mpz_class& k) const {
        if (is_zero()) return Dyadic();
        Dyadic r = *this;
        r.exp_ += k;
        return r;
    }

    // Exact product; mantissa lengths add.
    static Dyadic mul_exact(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return Dyadic();
        return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
    }

    // Directed rounding to at most prec mantissa bits.  down = toward -inf,
    // up = toward +inf, on the value axis.
    Dyadic round_dir(unsigned long prec, Dir dir) const {
        if (is_zero() || len() <= prec) return *this;
        unsigned long sh = len() - prec;
        mpz_class q;
        if (dir == Dir::down)
            mpz_fdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), sh);
        else
            mpz_cdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), sh);
        return Dyadic(q, exp_ + sh);
    }

    // Integer h with h*2^c <= x < (h+1)*2^c.  Bounded work: when x sits
    // entirely below the cutoff the answer is 0 or -1 with no shifting.
    static mpz_class split(const Dyadic& x, const mpz_class& c) {
        if (x.is_zero()) return mpz_class(0);
        mpz_class s = c - x.exp_;
        mpz_class q;
        if (s <= 0) {
            mpz_class ls = -s;
            if (ls > (1L << 26))
                throw Error("dyadic alignment blowup");
            mpz_mul_2exp(q.get_mpz_t(), x.mant_.get_mpz_t(),
                         ls.get_ui());
            return q;
        }
        if (s >= static_cast<unsigned long>(x.len()))
            return mpz_class(x.sign() < 0 ? -1 : 0);
        mpz_fdiv_q_2exp(q.get_mpz_t(), x.mant_.get_mpz_t(), s.get_ui());
        return q;
    }

    // a+b rounded in direction dir with at most prec mantissa bits.  The
    // result brackets the exact sum: down <= a+b <= up.
    static Dyadic add_dir(const Dyadic& a, const Dyadic& b,
                          unsigned long prec, Dir dir) {
        if (a.is_zero()) return b.round_dir(prec, dir);
        if (b.is_zero()) return a.round_dir(prec, dir);
        mpz_class ma = a.mag(), mb = b.mag();
        const mpz_class& mm = (ma > mb) ? ma : mb;
        mpz_class c = mm - (prec + 4);
        mpz_class hi = split(a, c) + split(b, c);
        // a normalized dyadic is exact at scale c iff its exponent is >= c,
        // so exact sums (cancellations included) stay exact
        if (dir == Dir::up)
            hi += (a.exp() >= c ? 0 : 1) + (b.exp() >= c ? 0 : 1);
        return Dyadic(hi, c).round_dir(prec, dir);
    }

    static Dyadic sub_dir(const Dyadic& a, const Dyadic& b,
                          unsigned long prec, Dir dir) {
        return add_dir(a, -b, prec, dir);
    }

    static Dyadic mul_dir(const Dyadic& a, const Dyadic& b,
                          unsigned long prec, Dir dir) {
        return mul_exact(a, b).round_dir(prec, dir);
    }

    static Dyadic div_dir(const Dyadic& a, const Dyadic& b,
                          unsigned long prec, Dir dir) {
        if (b.is_zero()) throw ZeroDivisor("dyadic division by zero");
        if (a.is_zero()) return Dyadic();
        long k = static_cast<long>(prec) + 4 + static_cast<long>(b.len()) -
                 static_cast<long>(a.len());
        if (k < 0) k = 0;
        mpz_class num;
        mpz_mul_2exp(num.get_mpz_t(), a.mant_.get_mpz_t(),
                     static_cast<unsigned long>(k));
        mpz_class q;
        if (dir == Dir::down)
            mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mant_.get_mpz_t());
        else
            mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.mant_.get_mpz_t());
        return Dyadic(q, a.exp_ - b.exp_ - k).round_dir(prec, dir);
    }

    // Exact three-way comparison; never materializes exponent gaps.
    static int cmp(const Dyadic& a, const Dyadic& b) {
        int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        mpz_class ma = a.mag(), mb = b.mag();
        int cm = ::cmp(ma, mb);
        if (cm != 0) return cm > 0 ? sa : -sa;
        // Equal magnitude window: exponent gap equals the length gap, so
        // alignment is bounded by the mantissa sizes.
        mpz_class d = a.exp_ - b.exp_;
        mpz_class am = a.mant_, bm = b.mant_;
        if (d >= 0)
            mpz_mul_2exp(am.get_mpz_t(), am.get_mpz_t(), d.get_ui());
        else
            mpz_mul_2exp(bm.get_mpz_t(), bm.get_mpz_t(),
                         mpz_class(-d).get_ui());
        return ::cmp(am, bm);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.mant_ == b.mant_ && (a.is_zero() || a.exp_ == b.exp_);
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    double to_double() const {
        if (is_zero()) return 0.0;
        unsigned long l = len();
        unsigned long sh = l > 53 ? l - 53 : 0;
        mpz_class q;
        mpz_tdiv_q_2exp(q.get_mpz_t(), mant_.get_mpz_t(), sh);
        double dm = q.get_d();
        mpz_class e2 = exp_ + sh;
        if (e2 > 4000) return sign() > 0 ? HUGE_VAL : -HUGE_VAL;
        if (e2 < -4000) return sign() > 0 ? 0.0 : -0.0;
        return std::ldexp(dm, static_cast<long>(e2.get_si()));
    }

    // "m*2^e" with odd m, or "0".
    std::string str() const {
        if (is_zero()) return "0";
        return mant_.get_str() + "*2^" + exp_.get_str();
    }

  private:
    void normalize() {
        if (sgn(mant_) == 0) {
            exp_ = 0;
            return;
        }
        mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
            exp_ += static_cast<unsigned long>(tz);
        }
    }

    mpz_class mant_;
    mpz_class exp_;
};

}  // namespace fint

#endif
