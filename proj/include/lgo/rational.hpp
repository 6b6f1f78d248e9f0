#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace lgo {

using Rational = mpq_class;
using Integer = mpz_class;

/// Representative of q mod 1 in [0, 1).
Rational frac(const Rational& q);

bool is_integer(const Rational& q);

/// Parses "p", "-p" or "p/q"; throws Error(kSyntaxError) otherwise.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

long to_long(const Integer& z);

long lcm_long(long a, long b);

/// Denominator of q in lowest terms, as a machine integer.
long denominator_of(const Rational& q);

/// lcm of the denominators of all entries.
long common_denominator(const std::vector<Rational>& v);

}  // namespace lgo
