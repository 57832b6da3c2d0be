#include "strata/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  BigInt n, d;
  mpz_import(n.get_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
  mpz_import(d.get_mpz_t(), 1, 1, sizeof(den), 0, 0, &den);
  Rational x(n, d);
  x.canonicalize();
  return x;
}

std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  Rational x;
  if (x.set_str(text, 10) != 0 || x.get_den() == 0) {
    throw std::invalid_argument("not a rational: " + text);
  }
  x.canonicalize();
  return x;
}

long double to_long_double(const Rational& x) {
  if (x == 0) return 0.0L;
  BigInt num = abs(x.get_num());
  const BigInt& den = x.get_den();
  // Scale so the integer quotient carries 64 significant bits.
  long shift = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) + 64;
  BigInt quot;
  if (shift >= 0) {
    BigInt scaled = num << static_cast<unsigned long>(shift);
    mpz_tdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    BigInt scaled = den << static_cast<unsigned long>(-shift);
    mpz_tdiv_q(quot.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  long extra = static_cast<long>(mpz_sizeinbase(quot.get_mpz_t(), 2)) - 64;
  if (extra > 0) {
    quot >>= static_cast<unsigned long>(extra);
    shift -= extra;
  }
  std::uint64_t top = 0;
  mpz_export(&top, nullptr, -1, sizeof(top), 0, 0, quot.get_mpz_t());
  long double value = std::ldexp(static_cast<long double>(top), static_cast<int>(-shift));
  return sgn(x) < 0 ? -value : value;
}

std::string to_decimal_string(const BigInt& x) { return x.get_str(); }

}  // namespace strata
