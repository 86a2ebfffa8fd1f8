#ifndef FINT_EXPONENT_HPP
#define FINT_EXPONENT_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fint/errors.hpp"

namespace fint {

// Monomial exponent vector.  Ordered lexicographically, which is what the
// triangular solves rely on.
struct Exponent {
    std::vector<std::uint32_t> e;

    Exponent() = default;
    explicit Exponent(std::size_t n) : e(n, 0) {}
    Exponent(std::initializer_list<std::uint32_t> init) : e(init) {}

    std::size_t size() const { return e.size(); }
    std::uint32_t& operator[](std::size_t i) { return e[i]; }
    std::uint32_t operator[](std::size_t i) const { return e[i]; }

    int degree() const {
        int d = 0;
        for (auto v : e) d += static_cast<int>(v);
        return d;
    }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.e == b.e;
    }
    friend bool operator!=(const Exponent& a, const Exponent& b) {
        return !(a == b);
    }
    friend bool operator<(const Exponent& a, const Exponent& b) {
        return a.e < b.e;
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b) {
        if (a.size() != b.size())
            throw TruncationMismatch("exponent arity mismatch");
        Exponent r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.e[i] += b.e[i];
        return r;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[i]);
        }
        return s + ")";
    }
};

inline Exponent unit_exponent(std::size_t n, std::size_t i) {
    Exponent r(n);
    r[i] = 1;
    return r;
}

}  // namespace fint

#endif
