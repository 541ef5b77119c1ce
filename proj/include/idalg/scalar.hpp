#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace idalg {

// Exact rationals over arbitrary-precision integers.  cpp_rational keeps
// values in lowest terms with a positive denominator, so equality is plain
// value equality.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string scalar_to_string(const Scalar& s) {
    if (denominator(s) == 1) return numerator(s).str();
    return numerator(s).str() + "/" + denominator(s).str();
}

// λ^k with the convention 0^0 = 1 (the weight enters as λ^{|I|-1}).
inline Scalar scalar_pow(const Scalar& base, unsigned k) {
    Scalar r = 1;
    for (unsigned i = 0; i < k; ++i) r *= base;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

} // namespace idalg
