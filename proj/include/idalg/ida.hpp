#pragma once

#include <map>
#include <string>

#include "idalg/tensor.hpp"

namespace idalg {

// Element of E(A) = A_eps (x) A (x) Ш⁺(A_T): each term an eps-monomial, a
// tensor word whose head is free and whose tail factors are functional, and
// a scalar.  The eps slot carries the "initialization" character ε(a), which
// the derivation annihilates.
struct IDAKey {
    Monomial eps;
    TensorWord word;

    bool operator==(const IDAKey&) const = default;
};

struct IDAKeyGreater {
    bool operator()(const IDAKey& a, const IDAKey& b) const {
        if (auto c = compare_monomials(a.eps, b.eps); c != 0)
            return c == std::strong_ordering::greater;
        return compare_words(a.word, b.word) == std::strong_ordering::greater;
    }
};

using IDAElement = std::map<IDAKey, Scalar, IDAKeyGreater>;

// Enforces the tail-functionality invariant on every inserted term.
void ida_add_term(IDAElement& f, const IDAKey& k, const Scalar& c);

IDAElement ida_add(const IDAElement& a, const IDAElement& b);
IDAElement ida_sub(const IDAElement& a, const IDAElement& b);
IDAElement ida_scale(const IDAElement& a, const Scalar& c);

// eps parts multiply in A, word parts by the mixable shuffle.
IDAElement ida_mul(const IDAElement& a, const IDAElement& b, const DerivationConfig& cfg);

// Zero derivation on A_eps, d_A on the word.
IDAElement ida_derive(const IDAElement& a, const DerivationConfig& cfg);

// The integral π_A.  Depth 1: Q(a) - ε(Q(a)) + 1 (x) T(a).  Deeper words:
// Q(a) (x) ā - π(Q(a)·ā) - λ π(d(Q(a))·ā) + 1 (x) T(a) (x) ā, where the
// products multiply into the first tail factor (one factor shorter), so the
// recursion is on strictly shorter words.  Requires the quasi-antiderivative
// to close off (always at weight 0; NonRegularError otherwise when it
// cannot).
IDAElement ida_integrate(const IDAElement& a, const DerivationConfig& cfg);

// f -> ε(1) (x) f, a differential algebra embedding.
IDAElement embed(const DiffPoly& f);

// u_0 (x) ... (x) u_k -> embed(u_0) · π(embed(u_1) · π(... π(embed(u_k)) ...)),
// the canonical comparison map from normal forms into E(A).
IDAElement to_evaluation_form(const RBElement& f, const DerivationConfig& cfg);

std::string to_string(const IDAElement& a);

} // namespace idalg
