#ifndef FINT_EIGEN_SUPPORT_HPP
#define FINT_EIGEN_SUPPORT_HPP

#include <Eigen/Core>

#include "fint/rational.hpp"

namespace Eigen {

// Lets dense Eigen decompositions (the test oracles use FullPivLU) run over
// the exact rational scalar.
template <>
struct NumTraits<fint::Rational> {
    using Real = fint::Rational;
    using NonInteger = fint::Rational;
    using Nested = fint::Rational;
    using Literal = fint::Rational;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 40,
        MulCost = 40
    };

    static inline Real epsilon() { return fint::Rational(0); }
    static inline Real dummy_precision() { return fint::Rational(0); }
    static inline int digits10() { return 0; }
    static inline Real highest() {
        return fint::Rational(1000000000L);  // unused by exact pivoting
    }
    static inline Real lowest() { return fint::Rational(-1000000000L); }
};

}  // namespace Eigen

namespace fint {
using RationalMatrix =
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
}  // namespace fint

#endif
