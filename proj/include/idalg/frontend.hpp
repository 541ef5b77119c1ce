#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idalg/tensor.hpp"

namespace idalg {

// AST for bracketed {d, P}-expressions over the alphabet: a scalar-weighted
// sum of terms, each term a commutative multiset of atoms.
struct OpExpr;

struct OpAtom {
    enum class Kind { Letter, D, P } kind = Kind::Letter;
    DiffLetter letter;            // Kind::Letter
    std::shared_ptr<OpExpr> arg;  // Kind::D / Kind::P
};

struct OpTerm {
    std::vector<OpAtom> atoms; // canonically sorted; empty = the term 1
};

struct OpExpr {
    std::vector<std::pair<OpTerm, Scalar>> terms; // canonical order, no zeros
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg), line(line_), col(col_) {}
};

struct ParseOptions {
    // Declared alphabet (ranks by declaration order); empty means any
    // identifier is accepted and ordered lexicographically.
    std::vector<std::string> alphabet;
    std::optional<int> truncation;
};

// Grammar: expr := ["+"|"-"] term (("+"|"-") term)*; term := factor ("*" factor)*;
// factor := rational | atom ("^" nat)?; atom := ident primes | ident "^(" nat ")"
//         | "d(" expr ")" | "P(" expr ")" | "(" expr ")".
OpExpr parse(const std::string& input, const ParseOptions& opts = {});

// Evaluation into Ш(k{X}) under the free DRB structure: letters to depth-1
// words, products to the mixable shuffle, P to apply_P, d to derive_word.
RBElement reduce(const OpExpr& e, const DerivationConfig& cfg);

// Nested-P rendering u0*P(u1*P(...)); inverse of reduce on basis words.
std::string to_bracketed(const RBElement& a);

std::string to_string(const OpExpr& e);

} // namespace idalg
