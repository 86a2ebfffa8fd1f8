#ifndef FINT_BALL_HPP
#define FINT_BALL_HPP

#include <string>

#include "fint/dyadic.hpp"
#include "fint/errors.hpp"
#include "fint/rational.hpp"

namespace fint {

enum class Sign { negative, zero, positive, undecided };

// Working precision for ball midpoints, per thread.  Radii always carry a
// short mantissa and round outward.
inline long& ball_precision() {
    thread_local long p = 256;
    return p;
}

constexpr long kDefaultPrecision = 256;
constexpr long kMaxPrecision = 1L << 14;
constexpr unsigned long kRadPrec = 32;

struct PrecisionScope {
    long saved;
    explicit PrecisionScope(long p) : saved(ball_precision()) {
        ball_precision() = p;
    }
    ~PrecisionScope() { ball_precision() = saved; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
};

// Certified real: the interval [mid - rad, mid + rad].
class Ball {
  public:
    Ball() = default;
    Ball(long v) : mid_(v) {}
    explicit Ball(Dyadic mid) : mid_(std::move(mid)) {}
    Ball(Dyadic mid, Dyadic rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
        if (rad_.sign() < 0) throw Error("negative ball radius");
    }

    static Ball from_rational(const Rational& q) {
        unsigned long p = static_cast<unsigned long>(ball_precision());
        Dyadic num(q.num(), 0), den(q.den(), 0);
        Dyadic lo = Dyadic::div_dir(num, den, p, Dir::down);
        Dyadic hi = Dyadic::div_dir(num, den, p, Dir::up);
        return from_endpoints(lo, hi);
    }

    static Ball from_endpoints(const Dyadic& lo, const Dyadic& hi) {
        if (Dyadic::cmp(lo, hi) > 0) throw Error("inverted ball endpoints");
        unsigned long p = static_cast<unsigned long>(ball_precision());
        Dyadic mid = Dyadic::add_dir(lo, hi, p, Dir::down).mul_pow2(-1);
        // The endpoints sit within an ulp of the midpoint, so the exact
        // differences stay short; rounding them outward keeps the radius
        // tight, which a width-limited subtraction would not.
        Dyadic r1 = sub_exact(hi, mid).round_dir(kRadPrec, Dir::up);
        Dyadic r2 = sub_exact(mid, lo).round_dir(kRadPrec, Dir::up);
        Dyadic rad = Dyadic::cmp(r1, r2) >= 0 ? r1 : r2;
        if (rad.sign() < 0) rad = Dyadic();
        return Ball(mid, rad);
    }

    const Dyadic& mid() const { return mid_; }
    const Dyadic& rad() const { return rad_; }

    bool is_exact() const { return rad_.is_zero(); }
    bool is_exact_zero() const { return mid_.is_zero() && rad_.is_zero(); }

    Dyadic lower() const {
        return Dyadic::sub_dir(mid_, rad_,
                               static_cast<unsigned long>(ball_precision()),
                               Dir::down);
    }
    Dyadic upper() const {
        return Dyadic::add_dir(mid_, rad_,
                               static_cast<unsigned long>(ball_precision()),
                               Dir::up);
    }
    // Upper bound for sup |x| over the ball.
    Dyadic abs_upper() const {
        return Dyadic::add_dir(abs(mid_), rad_, kRadPrec, Dir::up);
    }

    Sign sign() const {
        int cs = Dyadic::cmp(abs(mid_), rad_);
        if (cs > 0) return mid_.sign() > 0 ? Sign::positive : Sign::negative;
        if (rad_.is_zero()) return Sign::zero;
        return Sign::undecided;
    }

    bool contains_zero() const {
        Sign s = sign();
        return s == Sign::zero || s == Sign::undecided;
    }

    // Exact membership test.  Only usable at sane scales: it aligns
    // exponents for an exact subtraction.
    bool contains(const Rational& q) const {
        Dyadic lhs = sub_exact(Dyadic::mul_exact(mid_, Dyadic(q.den(), 0)),
                               Dyadic(q.num(), 0));
        Dyadic rhs = Dyadic::mul_exact(rad_, Dyadic(q.den(), 0));
        return Dyadic::cmp(abs(lhs), rhs) <= 0;
    }

    Ball operator-() const { return Ball(-mid_, rad_); }

    friend Ball operator+(const Ball& a, const Ball& b) {
        unsigned long p = static_cast<unsigned long>(ball_precision());
        Dyadic lo = Dyadic::add_dir(a.mid_, b.mid_, p, Dir::down);
        Dyadic hi = Dyadic::add_dir(a.mid_, b.mid_, p, Dir::up);
        Dyadic slack = sub_exact(hi, lo).round_dir(kRadPrec, Dir::up);
        Dyadic rad = rad_sum(a.rad_, b.rad_, slack);
        return Ball(lo, rad);
    }
    friend Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

    friend Ball operator*(const Ball& a, const Ball& b) {
        unsigned long p = static_cast<unsigned long>(ball_precision());
        Dyadic prod = Dyadic::mul_exact(a.mid_, b.mid_);
        Dyadic lo = prod.round_dir(p, Dir::down);
        Dyadic slack = sub_exact(prod.round_dir(p, Dir::up), lo)
                           .round_dir(kRadPrec, Dir::up);
        Dyadic am = Dyadic::add_dir(abs(a.mid_), Dyadic(), kRadPrec, Dir::up);
        Dyadic bm = Dyadic::add_dir(abs(b.mid_), Dyadic(), kRadPrec, Dir::up);
        Dyadic t1 = Dyadic::mul_dir(am, b.rad_, kRadPrec, Dir::up);
        Dyadic t2 = Dyadic::mul_dir(bm, a.rad_, kRadPrec, Dir::up);
        Dyadic t3 = Dyadic::mul_dir(a.rad_, b.rad_, kRadPrec, Dir::up);
        Dyadic rad = rad_sum(t1, t2, slack);
        rad = rad_sum(rad, t3, Dyadic());
        return Ball(lo, rad);
    }

    friend Ball operator/(const Ball& a, const Ball& b) {
        unsigned long p = static_cast<unsigned long>(ball_precision());
        Dyadic blo = Dyadic::sub_dir(b.mid_, b.rad_, p, Dir::down);
        Dyadic bhi = Dyadic::add_dir(b.mid_, b.rad_, p, Dir::up);
        if (blo.sign() <= 0 && bhi.sign() >= 0)
            throw ZeroDivisor("ball denominator straddles zero");
        Dyadic alo = Dyadic::sub_dir(a.mid_, a.rad_, p, Dir::down);
        Dyadic ahi = Dyadic::add_dir(a.mid_, a.rad_, p, Dir::up);
        Dyadic lo, hi;
        bool first = true;
        for (const Dyadic* n : {&alo, &ahi})
            for (const Dyadic* d : {&blo, &bhi}) {
                Dyadic qd = Dyadic::div_dir(*n, *d, p, Dir::down);
                Dyadic qu = Dyadic::div_dir(*n, *d, p, Dir::up);
                if (first) {
                    lo = qd;
                    hi = qu;
                    first = false;
                } else {
                    if (Dyadic::cmp(qd, lo) < 0) lo = qd;
                    if (Dyadic::cmp(qu, hi) > 0) hi = qu;
                }
            }
        return from_endpoints(lo, hi);
    }

    Ball& operator+=(const Ball& o) { return *this = *this + o; }
    Ball& operator-=(const Ball& o) { return *this = *this - o; }
    Ball& operator*=(const Ball& o) { return *this = *this * o; }
    Ball& operator/=(const Ball& o) { return *this = *this / o; }

    Ball mul_pow2(const mpz_class& k) const {
        return Ball(mid_.mul_pow2(k), rad_.mul_pow2(k));
    }

    friend Ball abs(const Ball& a) {
        Sign s = a.sign();
        if (s == Sign::negative) return -a;
        if (s == Sign::positive || s == Sign::zero) return a;
        // straddles zero: [0, max(|lo|, hi)] as a ball
        Dyadic hi = a.abs_upper();
        return from_endpoints(Dyadic(), hi);
    }

    friend Ball pow(const Ball& b, unsigned long e) {
        Ball acc(1);
        Ball base = b;
        while (e > 0) {
            if (e & 1) acc *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return acc;
    }

    std::string str() const {
        return "[" + mid_.str() + " +- " + rad_.str() + "]";
    }

    double to_double() const { return mid_.to_double(); }

  private:
    static Dyadic rad_sum(const Dyadic& a, const Dyadic& b, const Dyadic& c) {
        Dyadic t = Dyadic::add_dir(a, b, kRadPrec, Dir::up);
        return Dyadic::add_dir(t, c, kRadPrec, Dir::up);
    }

    // Exact subtraction; throws rather than materializing an astronomical
    // alignment.
    static Dyadic sub_exact(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return -b;
        if (b.is_zero()) return a;
        mpz_class gap = a.exp() - b.exp();
        if (gap < 0) gap = -gap;
        if (gap > (1L << 27))
            throw Error("exact subtraction across astronomical scales");
        mpz_class e = a.exp() < b.exp() ? a.exp() : b.exp();
        mpz_class am = a.mant(), bm = b.mant();
        mpz_mul_2exp(am.get_mpz_t(), am.get_mpz_t(),
                     mpz_class(a.exp() - e).get_ui());
        mpz_mul_2exp(bm.get_mpz_t(), bm.get_mpz_t(),
                     mpz_class(b.exp() - e).get_ui());
        return Dyadic(am - bm, e);
    }

    Dyadic mid_;
    Dyadic rad_;
};

}  // namespace fint

#endif
