#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace gwtqft {

/// Canonical rational number (GMP keeps num/den coprime with den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on malformed input or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const RationalVector& v);

bool is_integer(const Rational& r);
Integer floor_of(const Rational& r);
/// Representative of r modulo 1 in [0,1).
Rational frac(const Rational& r);

/// Exact conversion to long; throws if r is not an integer or out of range.
long to_long(const Rational& r);

}  // namespace gwtqft
