#pragma once

#include <string>

#include "eulerps/rational.hpp"

namespace eulerps {

// Floating point enters only through this boundary. Every conversion from an
// exact rational goes through an intermediate with at least 50 decimal digits
// of working precision, then a single rounding to double.

/// Round-to-nearest conversion (mpq_get_d truncates, so do not use it).
double to_double(const Rational& q);

/// sqrt(q) rounded to double; q must be >= 0.
double sqrt_to_double(const Rational& q);

/// q^(-1/root) for q > 0, evaluated in high precision.
double neg_root_to_double(const Rational& q, unsigned long root);

/// `digits` significant digits, round-half-even, normalized scientific
/// notation, e.g. "9.598519025230687e17". Exact zero prints as "0".
std::string format_sci(const Rational& q, int digits);

/// The 16-digit form used by the norm tables.
std::string format_sci16(const Rational& q);

/// Smallest value with `digits` significant decimal digits that is >= |x|,
/// with the sign of x reattached. Used for the reported remainder
/// coefficients, which are quoted rounded away from zero.
double round_up_significant(double x, int digits);

}  // namespace eulerps
