#include "fint/flow.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

namespace fint {

namespace {

double sup_norm(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> step_point(const std::vector<double>& x, double a,
                               const std::vector<double>& k) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * k[i];
    return y;
}

}  // namespace

double nearest_double(const Rational& q) {
    mpq_class v(q.num(), q.den());
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

double nearest_double(const Ball& b) {
    const Dyadic& m = b.mid();
    if (m.is_zero()) return 0.0;
    double sgn = m.sign() > 0 ? 1.0 : -1.0;
    if (!m.exp().fits_slong_p() || m.exp() > 8192 || m.exp() < -8192)
        return m.exp() < 0 ? sgn * 0.0 : sgn * HUGE_VAL;
    mpfr_t t;
    mpfr_init2(t, std::max<mpfr_prec_t>(
                      53, static_cast<mpfr_prec_t>(
                              mpz_sizeinbase(m.mant().get_mpz_t(), 2))));
    mpfr_set_z(t, m.mant().get_mpz_t(), MPFR_RNDN);  // exact
    mpfr_mul_2si(t, t, m.exp().get_si(), MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

double FloatPoly::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& [ex, c] : terms) {
        double v = c;
        for (std::size_t i = 0; i < ex.size(); ++i)
            for (std::uint32_t k = 0; k < ex[i]; ++k) v *= x[i];
        acc += v;
    }
    return acc;
}

std::vector<double> FloatField::eval(const std::vector<double>& x) const {
    std::vector<double> dx(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) dx[i] = f[i].eval(x);
    for (std::size_t t = 0; t + 1 < static_cast<std::size_t>(n); ++t) {
        dx[t + 1] += diag[t] * x[t + 1];
        if (super[t]) dx[t + 1] += x[t + 2];
    }
    return dx;
}

Trajectory integrate(const FloatField& ff, const std::vector<double>& x0,
                     double T, double h) {
    if (h <= 0.0) throw Error("step must be positive");
    if (T < 0.0) throw Error("horizon must be nonnegative");
    if (static_cast<int>(x0.size()) != ff.n)
        throw Error("state dimension mismatch");
    if (sup_norm(x0) > ff.radius)
        throw RadiusExceeded("initial state outside the trust region");
    long steps = std::lround(T / h);
    Trajectory traj;
    traj.h = h;
    traj.T = T;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
    traj.samples.push_back(x0);
    std::vector<double> x = x0;
    for (long i = 0; i < steps; ++i) {
        auto k1 = ff.eval(x);
        auto k2 = ff.eval(step_point(x, h / 2, k1));
        auto k3 = ff.eval(step_point(x, h / 2, k2));
        auto k4 = ff.eval(step_point(x, h, k3));
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        if (sup_norm(x) > ff.radius)
            throw RadiusExceeded("trajectory left the trust region at t = " +
                                 std::to_string((i + 1) * h));
        traj.samples.push_back(x);
    }
    return traj;
}

double max_drift(const FloatPoly& H, const Trajectory& traj) {
    if (traj.samples.empty()) return 0.0;
    double h0 = H.eval(traj.samples.front());
    double drift = 0.0;
    for (const auto& s : traj.samples)
        drift = std::max(drift, std::fabs(H.eval(s) - h0));
    return drift;
}

double equilibrium_scan(const FloatField& ff,
                        const std::vector<std::vector<double>>& phi_coeffs,
                        int samples, double radius) {
    if (samples < 1) throw Error("scan needs at least one sample");
    if (static_cast<int>(phi_coeffs.size()) + 1 != ff.n)
        throw Error("curve dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x1 = samples == 1
                        ? radius
                        : -radius + 2.0 * radius * i / (samples - 1);
        std::vector<double> x(static_cast<std::size_t>(ff.n), 0.0);
        x[0] = x1;
        for (std::size_t j = 0; j < phi_coeffs.size(); ++j) {
            double v = 0.0;
            for (std::size_t d = phi_coeffs[j].size(); d-- > 0;)
                v = v * x1 + phi_coeffs[j][d];
            x[j + 1] = v;
        }
        worst = std::max(worst, sup_norm(ff.eval(x)));
    }
    return worst;
}

}  // namespace fint
