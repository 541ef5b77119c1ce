#pragma once

#include <variant>
#include <vector>

#include "idalg/tensor.hpp"

namespace idalg {

// One-hole DRB monomial.  The hole sits in the factor after `prefix`,
// multiplied by `residual` and wrapped in derivative_wrap formal derivatives:
//   prefix_0 P( ... P( residual * d^l(*) * P( suffix_0 P( ... ))) ... )
// derivative_wrap >= 1 makes the context type I, = 0 type II.
struct RewriteContext {
    std::vector<Monomial> prefix;
    Monomial residual;
    std::vector<Monomial> suffix;
    int derivative_wrap = 0;
};

// Monic instance P(d(u)P(v)) - uP(v) + P(uv) + λP(d(u)v) of the
// integration-by-parts rule family, over parameters u, v in Ш.
struct RuleInstance {
    RBElement u, v;
    RBElement element;
};

RuleInstance make_rule(const RBElement& u, const RBElement& v, const DerivationConfig& cfg);

std::pair<TensorWord, Scalar> leading_term(const RBElement& f);

// Splice a into the hole of q and reduce into the DRB basis (the raw splice
// need not be a DRB monomial; the result always is a combination of them).
RBElement subst(const RewriteContext& q, const RBElement& a, const DerivationConfig& cfg);

// Whether splicing the single word w into q is already reduced: the formal
// substitution q|_w is itself a DRB monomial, with no rewriting triggered.
bool is_normal_splice(const RewriteContext& q, const TensorWord& w,
                      const DerivationConfig& cfg);

// Depth <= 2 words are irreducible; deeper words need every interior factor
// out of reach of the rule set, i.e. supported on functional monomials in
// either mode.  First and last factors are free.
bool is_irreducible(const TensorWord& w, const DerivationConfig& cfg);

enum class Strategy { Leftmost, Rightmost };

struct RewriteStep {
    TensorWord word;
    int position;
    Monomial interior;
    DiffPoly g, t; // interior = d(g) + t
};
using RewriteTrace = std::vector<RewriteStep>;

// Canonical form modulo the rule ideal: repeatedly pick a reducible interior
// factor m (leftmost by default), split m = d(g) + t, and replace the
// subword P(m*P(tail)) by g*P(tail) - P(g*tail_0 ...) - λP(d(g)*tail_0 ...)
// + P(t*P(tail)).  Each step lowers (depth, reducible-interior count)
// lexicographically, so the multiset measure terminates.
RBElement normal_form(const RBElement& f, const DerivationConfig& cfg,
                      RewriteTrace* trace = nullptr,
                      Strategy strategy = Strategy::Leftmost);

// Induced operations on the irreducible span (inputs in normal form).
RBElement nf_product(const RBElement& f, const RBElement& g, const DerivationConfig& cfg);
RBElement nf_P(const RBElement& f, const DerivationConfig& cfg);
RBElement nf_d(const RBElement& f, const DerivationConfig& cfg);

// Composition placements.  The residual returned by check_composition is
// zero exactly when the composition is trivial.
struct MultiplicationPlacement {
    RBElement multiplier; // f * multiplier, for f with leading word in C(ΔX)P(B)
};
struct IntersectionPlacement {
    RBElement u, v; // f*u - v*g with matching leading words
};
struct InclusionPlacement {
    RewriteContext q; // f - q|_g with q|_(lead g) = lead f
};
struct InclusionProductPlacement {
    RBElement cofactor; // q = P(cofactor * ⋆), polynomial co-factor
};
using Placement = std::variant<MultiplicationPlacement, IntersectionPlacement,
                               InclusionPlacement, InclusionProductPlacement>;

RBElement check_composition(const RuleInstance& f, const RuleInstance& g,
                            const Placement& placement, const DerivationConfig& cfg);

// Def-weak-monomial check: given u <= v, the substitution instances must
// compare the same way whenever the clause applies (always for type II;
// for type I only when q|_v is a normal splice).
bool check_weak_monomial_property(const TensorWord& u, const TensorWord& v,
                                  const RewriteContext& q, const DerivationConfig& cfg);

// All irreducible words with per-factor degree <= max_degree, letter order
// <= max_order and depth <= max_depth, ascending.
std::vector<TensorWord> enumerate_basis(int max_depth, int max_degree, int max_order,
                                        const std::vector<std::string>& alphabet,
                                        const DerivationConfig& cfg);

} // namespace idalg
