#ifndef FINT_IO_HPP
#define FINT_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fint/ball.hpp"
#include "fint/errors.hpp"
#include "fint/exponent.hpp"
#include "fint/rational.hpp"
#include "fint/scalar.hpp"
#include "fint/trunc_series.hpp"
#include "fint/vector_field.hpp"

namespace fint {

// An eigenvalue as declared in a system file: an exact rational, or the
// certified irrational written as the token zeta(K=k) / -zeta(K=k).
struct EigenvalueSpec {
    Rational value;
    int zeta_k = 0;
    int zeta_sign = 0;

    EigenvalueSpec() = default;
    explicit EigenvalueSpec(Rational v) : value(std::move(v)) {}
    EigenvalueSpec(int sign, int k) : zeta_k(k), zeta_sign(sign) {}

    bool is_zeta() const { return zeta_k > 0; }
    bool is_zero() const { return !is_zeta() && value.sign() == 0; }
    std::string str() const;

    friend bool operator==(const EigenvalueSpec& a, const EigenvalueSpec& b) {
        if (a.is_zeta() != b.is_zeta()) return false;
        if (a.is_zeta()) return a.zeta_k == b.zeta_k && a.zeta_sign == b.zeta_sign;
        return a.value == b.value;
    }
};

// One Jordan block: eigenvalue plus chain length.  A block of size s is
// written ev followed by s-1 repetitions of ":1".
struct JordanBlock {
    EigenvalueSpec ev;
    int size = 1;
};

struct SystemTerm {
    Rational coeff;
    Exponent ex;
};

// Parsed system file.  Terms keep their file order so serialization is
// faithful; shipped files are written in the canonical order.
struct SystemFile {
    int n = 0;
    std::vector<EigenvalueSpec> lambda;
    std::vector<JordanBlock> blocks;
    std::vector<std::vector<SystemTerm>> f;
    std::string backend = "auto";
    int trunc = 12;
    int precision = 256;
    bool has_options = false;
};

SystemFile parse_system(const std::string& text);
std::string serialize(const SystemFile& sf);

// Backend the options select: "rational" or "ball"; "auto" resolves to
// "ball" exactly when a zeta token appears among the eigenvalues.
std::string chosen_backend(const SystemFile& sf);

VectorField<Rational> field_rational(const SystemFile& sf);
VectorField<Ball> field_ball(const SystemFile& sf);

// FNV-1a, the digest quoted in reports so outputs name their input.
std::uint64_t fnv1a(std::string_view s);
std::string digest_hex(std::string_view s);

// Line-oriented result report.  Everything except the trailing time_ms line
// is deterministic for a given input and command.
struct Report {
    std::string command;
    std::string input_digest;
    std::vector<std::string> lines;
    long time_ms = -1;

    void kv(const std::string& key, const std::string& value) {
        lines.push_back(key + " = " + value);
    }
    std::string result_section() const;
    std::string str() const;
};

template <class K>
void report_series(Report& rep, const std::string& name,
                   const TruncSeries<K>& s) {
    for (int d = 0; d <= s.trunc(); ++d)
        for (const auto& [ex, c] : s.part(d).terms)
            rep.lines.push_back(name + "[" + std::to_string(d) + "]: " +
                                ex.str() + " -> " + ScalarOps<K>::str(c));
}

}  // namespace fint

#endif
