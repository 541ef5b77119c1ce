#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "idalg/poly.hpp"

namespace idalg {

struct Weight {
    Scalar lambda = 0;
};

struct DerivationConfig {
    Weight weight;
    std::optional<int> truncation; // nullopt = unbounded, n >= 1 otherwise

    bool unbounded() const { return !truncation.has_value(); }
    int order() const { return *truncation; }
};

// Raised when a quasi-antiderivative solve keeps escalating instead of
// closing off.  This happens exactly when the algebra is not regular at the
// session weight: for λ != 0 the two-variable monomial x^(1)*y^(1) already
// has no finite preimage decomposition (see quasi_antiderivative).
struct NonRegularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// d(x^(k)) = x^(k+1); in truncated mode x^(n) is sent to 0.
DiffPoly derive_letter(const DiffLetter& a, const DerivationConfig& cfg);

// The weight-λ derivation.  On a monomial: sum over nonempty subsets of the
// letter occurrences, raising each chosen occurrence, weighted by
// λ^(|subset|-1) and the multinomial count of the choice.
DiffPoly derive(const DiffPoly& f, const DerivationConfig& cfg);

struct QTDecomposition {
    DiffPoly q_part; // in A_J: no constant term
    DiffPoly t_part; // supported on functional monomials (constant included)
    Scalar e_part;   // the ker-d component = coefficient of 1 in t_part
};

// Unbounded mode only.  Returns the unique f = derive(q_part) + t_part with
// t_part functional and q_part constant-free, by triangular elimination on
// the leading non-functional term (each non-functional monomial is the
// leading term of the derivative of the monomial with its smallest letter
// lowered once).  Total for λ = 0; for λ != 0 the elimination can escalate
// forever on multi-variable input — NonRegularError is raised when the fuel
// bound is hit.
QTDecomposition quasi_antiderivative(const DiffPoly& f, const DerivationConfig& cfg,
                                     int fuel = 20000);

// Truncated counterpart on a single monomial m over Δ_n X: m = d_n(g) + t
// with t functional, by the same triangular elimination (always total here —
// the descent stays inside the finite graded piece of m, so no fuel bound).
// t is the canonical remainder; it can carry letters of order n (x*y^(2) at
// n = 2: no decomposition avoids it), and a boundary monomial like (x^(1))²
// at n = 1 stays in t even though it happens to lie in im d_1.
std::pair<DiffPoly, DiffPoly> decompose_truncated(const Monomial& m,
                                                  const DerivationConfig& cfg);

// Memoized per-monomial split m = d(g) + t for either mode (truncated
// elimination, or the quasi-antiderivative walk when unbounded).  The
// reference points into a per-(λ, order) cache that is never pruned, so it
// stays valid for the life of the process; this is what the rewriting engine
// calls on every interior splice.
const std::pair<DiffPoly, DiffPoly>& decompose_cached(const Monomial& m,
                                                      const DerivationConfig& cfg);

// True iff m is reducible in the order-n system, i.e. the leading monomial of
// a generic row d_n(m with smallest letter lowered) — equivalently, m is not
// functional.
bool is_truncated_pivot(const Monomial& m, const DerivationConfig& cfg);

// Mode dispatcher: quasi_antiderivative when unbounded, decompose_truncated
// termwise otherwise.  Either way the result satisfies f = derive(q_part) +
// t_part with functional t_part, and Q is a quasi-antiderivative for the
// mode's derivation: Q∘d∘Q = Q always, and d∘Q∘d = d away from the
// truncation boundary (inputs with letter orders <= n-1; on the boundary,
// kernel monomials of d_n make the direct sum behind the identity fail).
QTDecomposition qt_decompose(const DiffPoly& f, const DerivationConfig& cfg);

} // namespace idalg
