#pragma once

#include <map>
#include <string>
#include <vector>

#include "idalg/derivation.hpp"
#include "idalg/poly.hpp"

namespace idalg {

// DRB monomial u_0 (x) u_1 (x) ... (x) u_k, identified with the nested
// operator expression u_0*P(u_1*P(...P(u_k)...)).  Nonempty; depth = k+1.
struct TensorWord {
    std::vector<Monomial> factors;

    bool operator==(const TensorWord&) const = default;
    int depth() const { return int(factors.size()); }
};

// Word order: depth first, then factorwise by the monomial order.  It is
// uniform in the truncation, so both modes share it.
std::strong_ordering compare_words(const TensorWord& a, const TensorWord& b);

struct WordGreater {
    bool operator()(const TensorWord& a, const TensorWord& b) const {
        return compare_words(a, b) == std::strong_ordering::greater;
    }
};

// Element of Ш(k{X}); descending map, begin() = leading term.
using RBElement = std::map<TensorWord, Scalar, WordGreater>;

void rb_add_term(RBElement& f, const TensorWord& w, const Scalar& c);
RBElement rb_add(const RBElement& f, const RBElement& g);
RBElement rb_sub(const RBElement& f, const RBElement& g);
RBElement rb_scale(const RBElement& f, const Scalar& c);
RBElement rb_one();
RBElement rb_word(const TensorWord& w, const Scalar& c = 1);
RBElement rb_from_poly(const DiffPoly& f); // depth-1 words

TensorWord word_one();
TensorWord word_of(std::vector<Monomial> factors);

// The mixable-shuffle product of weight λ: heads multiply, tails interleave
// as shuffles with an extra λ-weighted merge branch.  Memoized per
// (λ, tail, tail) across the session.
RBElement mix_shuffle(const RBElement& a, const RBElement& b, const Weight& w);

// P(u_0 (x) ... (x) u_k) = 1 (x) u_0 (x) ... (x) u_k.
RBElement apply_P(const RBElement& a);

// d_A(u_0 (x) rest) = d(u_0) (x) rest + (u_0 u_1) (x) rest' + λ (d(u_0) u_1) (x) rest';
// on depth 1 it is the polynomial derivation.
RBElement derive_word(const RBElement& a, const DerivationConfig& cfg);

// Letter multiplicity of u_0, plus 1 for the P-part when depth > 1.
int breadth(const TensorWord& w);

std::string to_string(const TensorWord& w); // nested-P rendering
std::string to_string(const RBElement& f);

} // namespace idalg
