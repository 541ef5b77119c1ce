#pragma once

#include <compare>
#include <string>
#include <vector>

#include "idalg/scalar.hpp"

namespace idalg {

// Variable names live in a process-wide intern table; letters carry the
// symbol id so comparing and copying them costs integer work.  Ids are
// append-only and stable, and id 0 is the empty name.
int intern_symbol(const std::string& name);
const std::string& symbol_name(int sym);

// A derivative letter x^(k).  `rank` carries an explicitly declared alphabet
// position; with the default rank the alphabet order is lexicographic on
// names.  Letters over one session must use one consistent ranking.
struct DiffLetter {
    int sym = 0;
    int order = 0;
    int rank = 0;

    DiffLetter() = default;
    DiffLetter(const std::string& base_, int order_ = 0, int rank_ = 0)
        : sym(intern_symbol(base_)), order(order_), rank(rank_) {}
    const std::string& base() const { return symbol_name(sym); }

    bool operator==(const DiffLetter&) const = default;
};

// Total order on ΔX: by variable first, then by *descending* derivative
// order, so x^(2) < x^(1) < x and every x-letter precedes every y-letter
// when x < y.
std::strong_ordering compare_letters(const DiffLetter& a, const DiffLetter& b);

inline bool letter_less(const DiffLetter& a, const DiffLetter& b) {
    return compare_letters(a, b) == std::strong_ordering::less;
}

// Commutative monomial in standard form: factors strictly decreasing in the
// letter order (largest letter first), exponents >= 1.  Empty list is 1.
// `deg` caches the total letter count; it is maintained by the constructors
// below (monomials are not assembled by hand) and keeps the length-lex
// comparison from re-summing exponents in every map traversal.
struct Monomial {
    std::vector<std::pair<DiffLetter, int>> factors;
    int deg = 0;

    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool is_one() const { return factors.empty(); }
};

// Length-lex: total letter count (with multiplicity) first, then the
// descending letter sequences lexicographically.
std::strong_ordering compare_monomials(const Monomial& u, const Monomial& v);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_monomials(a, b) == std::strong_ordering::less;
    }
};
struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_monomials(a, b) == std::strong_ordering::greater;
    }
};

// u = 1, or the smallest letter of u is an order-0 variable, or that
// letter's exponent exceeds 1.  These span the complement A_T of im(d).
bool is_functional(const Monomial& u);

int degree(const Monomial& u);       // total letter count with multiplicity
int total_order(const Monomial& u);  // sum of derivative orders, weighted by exponent
int max_order(const Monomial& u);

Monomial mono_from_letter(const DiffLetter& l);
Monomial mono_mul(const Monomial& u, const Monomial& v);
// Canonicalize an unsorted (letter, exponent) list.
Monomial mono_normalize(std::vector<std::pair<DiffLetter, int>> factors);

// Canonical text form: descending factors joined by '*', letters printed as
// x, x^(3); exponents as x^2, x^(3)^2.  The identity prints as "1".
std::string to_string(const DiffLetter& l);
std::string to_string(const Monomial& u);

} // namespace idalg
