#ifndef FINT_ERRORS_HPP
#define FINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fint {

// Every failure the library can signal deliberately.  Anything else escaping
// is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input series has terms below the admissible valuation.
struct ValuationError : Error {
    using Error::Error;
};

// Two series with incompatible truncation orders or variable counts were
// combined.
struct TruncationMismatch : Error {
    using Error::Error;
};

// A resonance was met where the construction needs <q,lambda> != 0.
struct ResonantTail : Error {
    explicit ResonantTail(const std::string& what) : Error(what) {}
};

// Exact scalar division by zero, or a homological divisor that is exactly 0.
struct ZeroDivisor : Error {
    using Error::Error;
};

// Ball arithmetic could not decide a sign even at the precision cap.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// An operation that requires the field in straightened form got one that
// is not.
struct NotStraightened : Error {
    using Error::Error;
};

// The doubly exponential schedule left the materializable range.
struct ScheduleOverflow : Error {
    using Error::Error;
};

// Straightening found a remainder term surviving on the candidate curve.
struct CurveNotInvariant : Error {
    using Error::Error;
};

// The tail block has a zero eigenvalue, so the implicit curve solve cannot
// start.
struct SingularBlock : Error {
    using Error::Error;
};

// A numerically integrated trajectory left the trust region.
struct RadiusExceeded : Error {
    using Error::Error;
};

// Malformed system file or CLI input.
struct ParseError : Error {
    using Error::Error;
};

// Malformed system file text; carries the offending position.
struct SyntaxError : ParseError {
    int line = 0;
    int column = 0;
    SyntaxError(const std::string& what, int line_, int column_)
        : ParseError(what + " at line " + std::to_string(line_) + ", column " +
                     std::to_string(column_)),
          line(line_),
          column(column_) {}
};

// The declared linear part is not in Jordan normal form, or does not match
// the eigenvalue list.
struct NotJordanForm : Error {
    using Error::Error;
};

}  // namespace fint

#endif
