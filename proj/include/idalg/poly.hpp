#pragma once

#include <map>
#include <string>

#include "idalg/letters.hpp"
#include "idalg/scalar.hpp"

namespace idalg {

// Element of k{X}: finite Monomial -> Scalar map, stored descending so
// begin() is the leading term and iteration order is the canonical printing
// order.  No zero coefficients are stored.
using DiffPoly = std::map<Monomial, Scalar, MonoGreater>;

void poly_add_term(DiffPoly& f, const Monomial& m, const Scalar& c);
DiffPoly poly_add(const DiffPoly& f, const DiffPoly& g);
DiffPoly poly_sub(const DiffPoly& f, const DiffPoly& g);
DiffPoly poly_scale(const DiffPoly& f, const Scalar& c);
DiffPoly poly_mul(const DiffPoly& f, const DiffPoly& g);

DiffPoly poly_one();
DiffPoly poly_mono(const Monomial& m, const Scalar& c = 1);

bool poly_is_zero(const DiffPoly& f);
// Leading (maximal) term; f must be nonzero.
const std::pair<const Monomial, Scalar>& poly_lead(const DiffPoly& f);

std::string to_string(const DiffPoly& f);

} // namespace idalg
