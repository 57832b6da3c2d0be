#ifndef STRATA_RATIONAL_HPP
#define STRATA_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace strata {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Builds num/den in canonical (reduced) form.
Rational make_rational(std::uint64_t num, std::uint64_t den);

/// "num/den" with den omitted never; 0 prints as "0/1".
std::string to_fraction_string(const Rational& x);

/// Parses "num/den" or a bare integer.
Rational parse_fraction(const std::string& text);

/// Nearest-ish long double (64 significant bits of the quotient, truncated).
long double to_long_double(const Rational& x);

std::string to_decimal_string(const BigInt& x);

}  // namespace strata

#endif  // STRATA_RATIONAL_HPP
