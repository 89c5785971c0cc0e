#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace robsel {

// Exact rational number. mpq_class stays canonical (lowest terms, positive
// denominator) under arithmetic; construction must go through rat() or
// parse_rational() so that raw numerator/denominator pairs are canonicalized.
using Rational = mpq_class;

// num/den as an exact rational. den must be nonzero.
Rational rat(long num, long den = 1);

// Parses an integer literal or "p/q" (q > 0), with optional leading '-'.
// Decimal points and exponents are rejected: inputs are exact by contract.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise, always in lowest terms.
std::string to_string(const Rational& value);

// Fixed-point rendering with `digits` fraction digits, rounding the absolute
// value half-up. Display only; never feeds back into arithmetic.
std::string to_decimal_string(const Rational& value, int digits);

bool is_integer(const Rational& value);

// Largest integer <= value.
Rational floor(const Rational& value);

// Exact conversion to long; value must be an integer that fits.
long to_long(const Rational& value);

}  // namespace robsel
