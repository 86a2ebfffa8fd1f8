#ifndef FINT_TRUNC_SERIES_HPP
#define FINT_TRUNC_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "fint/homog_poly.hpp"

namespace fint {

// Polynomial truncated at a fixed total degree, stored by homogeneous part.
// A series with truncation N represents its value modulo degree N+1; every
// operation states (and checks) what it can certify about the result.
template <class K>
class TruncSeries {
  public:
    TruncSeries() = default;
    TruncSeries(int nvars, int trunc) : nvars_(nvars), trunc_(trunc) {
        parts_.reserve(trunc + 1);
        for (int d = 0; d <= trunc; ++d) parts_.emplace_back(nvars, d);
    }

    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }

    const HomogPoly<K>& part(int d) const {
        check_degree(d);
        return parts_[d];
    }
    HomogPoly<K>& part(int d) {
        check_degree(d);
        return parts_[d];
    }

    void add_term(const Exponent& ex, const K& c) {
        check_degree(ex.degree());
        parts_[ex.degree()].add_term(ex, c);
    }

    bool is_zero() const {
        for (const auto& p : parts_)
            if (!p.empty()) return false;
        return true;
    }

    // Smallest degree with a surviving term.
    std::optional<int> valuation() const {
        for (int d = 0; d <= trunc_; ++d)
            if (!parts_[d].empty()) return d;
        return std::nullopt;
    }

  private:
    void check_degree(int d) const {
        if (d < 0 || d > trunc_)
            throw TruncationMismatch("degree " + std::to_string(d) +
                                     " outside truncation order " +
                                     std::to_string(trunc_));
    }

    int nvars_ = 0;
    int trunc_ = -1;
    std::vector<HomogPoly<K>> parts_;
};

template <class K>
HomogPoly<K> grade(const TruncSeries<K>& f, int d) {
    return f.part(d);
}

template <class K>
TruncSeries<K> truncate(const TruncSeries<K>& f, int n) {
    if (n > f.trunc())
        throw TruncationMismatch("cannot raise truncation order");
    TruncSeries<K> r(f.nvars(), n);
    for (int d = 0; d <= n; ++d) r.part(d) = f.part(d);
    return r;
}

template <class K>
TruncSeries<K> operator+(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    if (a.nvars() != b.nvars() || a.trunc() != b.trunc())
        throw TruncationMismatch("adding series with different shape");
    TruncSeries<K> r = a;
    for (int d = 0; d <= b.trunc(); ++d)
        for (const auto& [ex, c] : b.part(d).terms) r.part(d).add_term(ex, c);
    return r;
}

template <class K>
TruncSeries<K> operator-(const TruncSeries<K>& a) {
    TruncSeries<K> r(a.nvars(), a.trunc());
    for (int d = 0; d <= a.trunc(); ++d) r.part(d) = -a.part(d);
    return r;
}

template <class K>
TruncSeries<K> operator-(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    return a + (-b);
}

template <class K>
TruncSeries<K> scale(const TruncSeries<K>& a, const K& s) {
    TruncSeries<K> r(a.nvars(), a.trunc());
    for (int d = 0; d <= a.trunc(); ++d) r.part(d) = scale(a.part(d), s);
    return r;
}

// Product certified through degree rtrunc.  Sound iff every degree <= rtrunc
// of the true product is determined by the stored parts, which is what the
// valuation conditions check.
template <class K>
TruncSeries<K> mul(const TruncSeries<K>& a, const TruncSeries<K>& b,
                   int rtrunc) {
    if (a.nvars() != b.nvars())
        throw TruncationMismatch("multiplying series in different variables");
    auto va = a.valuation(), vb = b.valuation();
    if (va && vb) {
        if (rtrunc > a.trunc() + *vb || rtrunc > b.trunc() + *va)
            throw TruncationMismatch(
                "product not determined through degree " +
                std::to_string(rtrunc));
    }
    TruncSeries<K> r(a.nvars(), rtrunc);
    if (!va || !vb) return r;
    for (int da = *va; da <= a.trunc(); ++da) {
        if (a.part(da).empty()) continue;
        for (int db = *vb; db <= b.trunc() && da + db <= rtrunc; ++db) {
            if (b.part(db).empty()) continue;
            for (const auto& [ea, ca] : a.part(da).terms)
                for (const auto& [eb, cb] : b.part(db).terms)
                    r.part(da + db).add_term(ea + eb, ca * cb);
        }
    }
    return r;
}

template <class K>
TruncSeries<K> mul(const TruncSeries<K>& a, const TruncSeries<K>& b) {
    return mul(a, b, std::min(a.trunc(), b.trunc()));
}

// Partial derivative.  One degree of certification is lost.
template <class K>
TruncSeries<K> diff(const TruncSeries<K>& f, std::size_t var) {
    int rt = f.trunc() > 0 ? f.trunc() - 1 : 0;
    TruncSeries<K> r(f.nvars(), rt);
    for (int d = 1; d <= f.trunc(); ++d) {
        HomogPoly<K> p = diff(f.part(d), var);
        for (const auto& [ex, c] : p.terms) r.part(d - 1).add_term(ex, c);
    }
    return r;
}

// f(args[0], ..., args[n-1]) truncated at the common order of the args.
// Every argument needs valuation >= 1, otherwise constant terms would feed
// unbounded degrees into every output degree.
template <class K>
TruncSeries<K> compose(const TruncSeries<K>& f,
                       const std::vector<TruncSeries<K>>& args) {
    if (static_cast<int>(args.size()) != f.nvars())
        throw TruncationMismatch("composition arity mismatch");
    if (args.empty()) throw TruncationMismatch("composition with no arguments");
    int m = args[0].nvars();
    int nt = args[0].trunc();
    for (const auto& g : args) {
        if (g.nvars() != m || g.trunc() != nt)
            throw TruncationMismatch("composition arguments with different shape");
        auto v = g.valuation();
        if (v && *v < 1)
            throw ValuationError("composition argument with constant term");
    }
    // cache arg powers up to the largest exponent appearing in f
    std::vector<std::vector<TruncSeries<K>>> pows(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
        pows[i].push_back(TruncSeries<K>(m, nt));  // placeholder for power 0

    auto power = [&](std::size_t i, std::uint32_t k) -> const TruncSeries<K>& {
        while (pows[i].size() <= k) {
            if (pows[i].size() == 1)
                pows[i].push_back(args[i]);
            else
                pows[i].push_back(mul(pows[i].back(), args[i], nt));
        }
        return pows[i][k];
    };

    TruncSeries<K> r(m, nt);
    for (int d = 0; d <= f.trunc(); ++d) {
        for (const auto& [ex, c] : f.part(d).terms) {
            TruncSeries<K> term(m, nt);
            term.add_term(Exponent(static_cast<std::size_t>(m)), c);
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (ex[i] == 0) continue;
                term = mul(term, power(i, ex[i]), nt);
            }
            r = r + term;
        }
    }
    return r;
}

template <class K>
std::string series_str(const TruncSeries<K>& f) {
    std::string s;
    for (int d = 0; d <= f.trunc(); ++d) {
        if (f.part(d).empty()) continue;
        if (!s.empty()) s += " + ";
        s += poly_str(f.part(d));
    }
    return s.empty() ? "0" : s;
}

}  // namespace fint

#endif
