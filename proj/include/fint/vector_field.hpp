#ifndef FINT_VECTOR_FIELD_HPP
#define FINT_VECTOR_FIELD_HPP

#include <vector>

#include "fint/trunc_series.hpp"

namespace fint {

// Jordan-form tail matrix B: diagonal entries plus 0/1 superdiagonal flags.
// super[i] set means B(i,i+1) = 1, which requires diag[i] == diag[i+1].
template <class K>
struct JordanForm {
    std::vector<K> diag;
    std::vector<char> super;  // size == diag.size(), last entry always 0

    JordanForm() = default;
    explicit JordanForm(std::vector<K> d)
        : diag(std::move(d)), super(diag.size(), 0) {}

    std::size_t size() const { return diag.size(); }

    void set_chain(std::size_t i) {
        if (i + 1 >= diag.size())
            throw Error("jordan chain flag out of range");
        if (!ScalarOps<K>::is_exact_zero(diag[i] - diag[i + 1]))
            throw Error("jordan chain across distinct eigenvalues");
        super[i] = 1;
    }

    bool has_chain() const {
        for (char c : super)
            if (c) return true;
        return false;
    }
};

// Vector field with linear part 0 (+) B and polynomial remainder f, truncated
// at degree `trunc`.  Variables are ordered (x1, y1, ..., y_{n-1}).
//
// The remainder convention: components 2..n (the y rows) hold terms of total
// degree >= 2 only, so B really is the linear part there.  The x1 row may in
// addition hold degree-1 terms in the y variables alone (a coupling row like
// dx1/dt = y1 - x1^2 keeps its y1 inside f1); an x1-linear term is never
// admitted since the zero eigenvalue is structural.
template <class K>
struct VectorField {
    int n = 0;
    JordanForm<K> B;
    std::vector<TruncSeries<K>> f;
    bool straightened = false;

    VectorField() = default;
    VectorField(int n_, JordanForm<K> B_, std::vector<TruncSeries<K>> f_)
        : n(n_), B(std::move(B_)), f(std::move(f_)) {
        validate();
    }

    int trunc() const { return f.empty() ? -1 : f[0].trunc(); }

    const std::vector<K>& tail_eigenvalues() const { return B.diag; }

    void validate() const {
        if (n < 2) throw Error("vector field needs at least two variables");
        if (static_cast<int>(B.size()) != n - 1)
            throw Error("tail matrix size mismatch");
        if (static_cast<int>(f.size()) != n)
            throw Error("component count mismatch");
        for (const auto& fi : f) {
            if (fi.nvars() != n || fi.trunc() != f[0].trunc())
                throw TruncationMismatch("remainder components with different shape");
        }
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d <= f[i].trunc(); ++d) {
                for (const auto& [ex, c] : f[i].part(d).terms) {
                    (void)c;
                    if (d >= 2) continue;
                    if (d < 1 || i != 0 || ex[0] != 0)
                        throw ValuationError(
                            "remainder term of degree < 2 in component " +
                            std::to_string(i + 1));
                }
            }
        }
    }

    // True iff every remainder monomial involves at least one y variable.
    bool vanishes_on_axis() const {
        for (const auto& fi : f)
            for (int d = 0; d <= fi.trunc(); ++d)
                for (const auto& [ex, c] : fi.part(d).terms) {
                    (void)c;
                    bool has_tail = false;
                    for (std::size_t j = 1; j < ex.size(); ++j)
                        if (ex[j] > 0) has_tail = true;
                    if (!has_tail) return false;
                }
        return true;
    }
};

}  // namespace fint

#endif
