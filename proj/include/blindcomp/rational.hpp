#pragma once

// Exact rational scalar used by the rational backend.  Arbitrary precision so
// simplex pivoting and permutation overlaps never overflow.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "blindcomp/errors.hpp"

namespace blindcomp {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Canonical "num/den" form, denominator always printed and positive.
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "num/den", plain integers, and finite decimals ("0.25", "-3.5e-2").
Rat rat_from_string(const std::string& text);

}  // namespace blindcomp
