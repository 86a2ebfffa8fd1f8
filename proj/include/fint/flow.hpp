#ifndef FINT_FLOW_HPP
#define FINT_FLOW_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "fint/singular_curve.hpp"
#include "fint/vector_field.hpp"

namespace fint {

// Nearest-double conversions for snapshotting exact coefficients.
double nearest_double(const Rational& q);
double nearest_double(const Ball& b);

// Hardware-float polynomial, a flat term list.
struct FloatPoly {
    int nvars = 0;
    std::vector<std::pair<std::vector<std::uint32_t>, double>> terms;

    double eval(const std::vector<double>& x) const;
};

template <class K>
FloatPoly snapshot_series(const TruncSeries<K>& s) {
    FloatPoly p;
    p.nvars = s.nvars();
    for (int d = 0; d <= s.trunc(); ++d)
        for (const auto& [ex, c] : s.part(d).terms)
            p.terms.push_back({ex.e, nearest_double(c)});
    return p;
}

// Double snapshot of a vector field plus a trust radius for evaluation.
struct FloatField {
    int n = 0;
    int source_trunc = 0;
    double radius = 1.0;
    std::vector<double> diag;
    std::vector<char> super;
    std::vector<FloatPoly> f;

    std::vector<double> eval(const std::vector<double>& x) const;
};

template <class K>
FloatField snapshot(const VectorField<K>& vf, double radius = 1.0) {
    FloatField ff;
    ff.n = vf.n;
    ff.source_trunc = vf.trunc();
    ff.radius = radius;
    ff.diag.reserve(vf.B.diag.size());
    for (const K& l : vf.B.diag) ff.diag.push_back(nearest_double(l));
    ff.super = vf.B.super;
    ff.f.reserve(vf.f.size());
    for (const auto& fi : vf.f) ff.f.push_back(snapshot_series(fi));
    return ff;
}

struct Trajectory {
    double h = 0.0;
    double T = 0.0;
    std::vector<std::vector<double>> samples;  // states at t_i = i h
};

// Classical fixed-step 4th-order integration with a trust-region guard.
Trajectory integrate(const FloatField& ff, const std::vector<double>& x0,
                     double T, double h);

double max_drift(const FloatPoly& H, const Trajectory& traj);

template <class K>
double conservation_drift(const TruncSeries<K>& H, const Trajectory& traj) {
    return max_drift(snapshot_series(H), traj);
}

// Max sup-norm of the field over sampled points (x1, phi(x1)), x1 in
// [-radius, radius].
double equilibrium_scan(const FloatField& ff,
                        const std::vector<std::vector<double>>& phi_coeffs,
                        int samples, double radius);

template <class K>
double curve_equilibrium_scan(const FloatField& ff, const SeriesCurve<K>& curve,
                              int samples, double radius) {
    if (static_cast<int>(curve.phi.size()) + 1 != ff.n)
        throw Error("curve dimension mismatch");
    if (curve.trunc() < ff.source_trunc)
        throw TruncationMismatch("curve truncated below the field order");
    std::vector<std::vector<double>> coeffs;
    coeffs.reserve(curve.phi.size());
    for (const auto& comp : curve.phi) {
        std::vector<double> c(static_cast<std::size_t>(comp.trunc()) + 1, 0.0);
        for (int d = 0; d <= comp.trunc(); ++d) {
            Exponent ex(1);
            ex[0] = static_cast<std::uint32_t>(d);
            if (const K* v = comp.part(d).coeff(ex)) c[d] = nearest_double(*v);
        }
        coeffs.push_back(std::move(c));
    }
    return equilibrium_scan(ff, coeffs, samples, radius);
}

}  // namespace fint

#endif
