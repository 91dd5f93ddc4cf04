#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ua {

// Exact arbitrary-precision fraction; always kept in canonical form.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Builds num/den in canonical form. Throws InputError when den == 0.
Rational frac(long num, long den = 1);

/// Always "a/b", integers included ("0/1", "1/1").
std::string to_string(const Rational& q);

/// Accepts "a/b" or a bare integer, with optional sign on the numerator.
Rational parse_rational(std::string_view text);

}  // namespace ua
