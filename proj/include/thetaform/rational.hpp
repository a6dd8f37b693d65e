#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace thetaform {

/// Exact rational scalar used for every coefficient in the library.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" (or "p" when the denominator is one), always in lowest terms.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace thetaform
