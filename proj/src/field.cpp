#include "strata/field.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

#include "strata/error.hpp"
#include "strata/rational.hpp"

namespace strata {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

u64 addmod(u64 a, u64 b, u64 m) { return a >= m - b ? a - (m - b) : a + b; }
u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

// Polynomials over F_p, coefficients low to high, no trailing zeros.
using Poly = std::vector<u64>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const u64 lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) {
      a[shift + j] = submod(a[shift + j], mulmod(c, m[j], p), p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], p), p);
    }
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: a monic f of degree r is irreducible iff gcd(f, x^(p^i) - x) = 1
// for every i <= r/2.
bool is_irreducible(const Poly& f, u64 p) {
  const std::size_t r = f.size() - 1;
  if (r <= 1) return r == 1;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= r / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = submod(diff[1], 1, p);
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

std::string describe(u64 p, unsigned r) {
  return "p=" + std::to_string(p) + ", r=" + std::to_string(r);
}

}  // namespace

std::uint64_t table_limit() {
  if (const char* env = std::getenv("STRATA_TABLE_LIMIT")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return u64{1} << 26;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field::Field(std::uint64_t p, unsigned r, std::vector<std::uint64_t> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
  u128 q = 1;
  for (unsigned i = 0; i < r; ++i) {
    q *= p;
    if (q > ~u64{0}) throw Error(ErrorCode::CapacityExceeded, describe(p, r) + " overflows 64 bits");
  }
  q_ = static_cast<u64>(q);
  if (p == 2 && r >= 2) {
    for (unsigned i = 0; i <= r; ++i) {
      if (modulus_[i]) binary_modulus_ |= u128{1} << i;
    }
  }
}

FieldPtr Field::make(std::uint64_t p, unsigned r) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  if (r == 0) throw Error(ErrorCode::BadRange, "extension degree must be positive");
  // Capacity check before the search so huge requests fail fast.
  u128 q = 1;
  for (unsigned i = 0; i < r; ++i) {
    q *= p;
    if (q > ~u64{0}) throw Error(ErrorCode::CapacityExceeded, describe(p, r) + " overflows 64 bits");
  }
  if (r == 1) return FieldPtr(new Field(p, 1, {0, 1}));

  // Monic candidates in canonical code order: the lower r coefficients are
  // the base-p digits of the counter.
  Poly candidate(r + 1, 0);
  candidate[r] = 1;
  for (u64 lower = 0; lower < static_cast<u64>(q); ++lower) {
    u64 rest = lower;
    for (unsigned i = 0; i < r; ++i) {
      candidate[i] = rest % p;
      rest /= p;
    }
    if (candidate[0] == 0) continue;
    if (is_irreducible(candidate, p)) return FieldPtr(new Field(p, r, candidate));
  }
  throw Error(ErrorCode::BadRange, "no irreducible polynomial found for " + describe(p, r));
}

FieldPtr Field::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorCode::BadRange, "modulus must be monic of positive degree");
  }
  for (u64 c : modulus) {
    if (c >= p) throw Error(ErrorCode::BadRange, "modulus coefficient out of range");
  }
  const auto r = static_cast<unsigned>(modulus.size() - 1);
  if (!is_irreducible(modulus, p)) throw Error(ErrorCode::BadRange, "modulus is reducible");
  // Degree-1 moduli s - c all give the same arithmetic; normalize to s.
  if (r == 1) modulus = {0, 1};
  return FieldPtr(new Field(p, r, std::move(modulus)));
}

std::string Field::modulus_code() const {
  BigInt code = 0;
  BigInt place = 1;
  for (u64 c : modulus_) {
    code += BigInt(std::to_string(c)) * place;
    place *= BigInt(std::to_string(p_));
  }
  return code.get_str();
}

std::string Field::description() const {
  return std::to_string(p_) + "," + std::to_string(r_) + "," + modulus_code();
}

std::vector<std::uint64_t> Field::decode(std::uint64_t code) const {
  if (code >= q_) throw Error(ErrorCode::CodeOutOfRange, std::to_string(code));
  std::vector<u64> coeffs(r_);
  for (unsigned i = 0; i < r_; ++i) {
    coeffs[i] = code % p_;
    code /= p_;
  }
  return coeffs;
}

std::uint64_t Field::encode(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != r_) throw Error(ErrorCode::CodeOutOfRange, "expected r coefficients");
  u64 code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw Error(ErrorCode::CodeOutOfRange, "coefficient out of range");
    code = code * p_ + coeffs[i];
  }
  return code;
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  if (r_ == 1) return addmod(a, b, p_);
  if (p_ == 2) return a ^ b;
  u64 result = 0;
  u64 place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    result += addmod(a % p_, b % p_, p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return result;
}

std::uint64_t Field::neg(std::uint64_t a) const {
  if (r_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  u64 result = 0;
  u64 place = 1;
  for (unsigned i = 0; i < r_; ++i) {
    const u64 digit = a % p_;
    result += (digit == 0 ? 0 : p_ - digit) * place;
    a /= p_;
    place *= p_;
  }
  return result;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  if (r_ == 1) return mulmod(a, b, p_);
  if (p_ == 2) return mul_binary(a, b);
  return mul_general(a, b);
}

std::uint64_t Field::mul_binary(std::uint64_t a, std::uint64_t b) const {
  u128 prod = 0;
  for (unsigned i = 0; i < r_; ++i) {
    if ((b >> i) & 1) prod ^= static_cast<u128>(a) << i;
  }
  for (int i = 2 * static_cast<int>(r_) - 2; i >= static_cast<int>(r_); --i) {
    if ((prod >> i) & 1) prod ^= binary_modulus_ << (i - static_cast<int>(r_));
  }
  return static_cast<u64>(prod);
}

std::uint64_t Field::mul_general(std::uint64_t a, std::uint64_t b) const {
  // r >= 2 and p >= 3 imply r <= 40 and p < 2^32.
  std::array<u64, 64> da{};
  std::array<u64, 64> db{};
  for (unsigned i = 0; i < r_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  std::array<u64, 128> prod{};
  for (unsigned i = 0; i < r_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < r_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  for (unsigned i = 2 * r_ - 2; i >= r_; --i) {
    const u64 c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < r_; ++j) {
      prod[i - r_ + j] = (prod[i - r_ + j] + (p_ - c * modulus_[j] % p_)) % p_;
    }
    prod[i] = 0;
  }
  u64 code = 0;
  for (unsigned i = r_; i-- > 0;) code = code * p_ + prod[i];
  return code;
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
  u64 result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, q_ - 2);
}

unsigned Field::degree_over_prime(std::uint64_t a) const {
  if (a >= q_) throw Error(ErrorCode::CodeOutOfRange, std::to_string(a));
  u64 image = a;
  unsigned applied = 0;
  for (unsigned e : divisors(r_)) {
    while (applied < e) {
      image = frobenius(image);
      ++applied;
    }
    if (image == a) return e;
  }
  return r_;
}

FieldElement::FieldElement(FieldPtr field, std::uint64_t code)
    : field_(std::move(field)), code_(code) {
  if (code_ >= field_->q()) throw Error(ErrorCode::CodeOutOfRange, std::to_string(code_));
}

namespace {

const Field& common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field() && !a.field()->same_as(*b.field())) {
    throw Error(ErrorCode::FieldMismatch, a.field()->description() + " vs " + b.field()->description());
  }
  return *a.field();
}

}  // namespace

FieldElement FieldElement::inverse() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).add(a.code_, b.code_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).sub(a.code_, b.code_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).mul(a.code_, b.code_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  const Field& f = common_field(a, b);
  return {a.field_, f.mul(a.code_, f.inv(b.code_))};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  (void)common_field(a, b);
  return a.code_ == b.code_;
}

std::uint64_t encode(const FieldElement& x) { return x.code(); }

FieldElement decode(const FieldPtr& field, std::uint64_t code) { return {field, code}; }

FieldElement from_coeffs(const FieldPtr& field, std::span<const std::uint64_t> coeffs) {
  return {field, field->encode(coeffs)};
}

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

int mobius(unsigned n) {
  int result = 1;
  for (unsigned f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    n /= f;
    if (n % f == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::map<unsigned, std::uint64_t> count_by_degree(const Field& field) {
  std::map<unsigned, std::uint64_t> counts;
  BigInt total = 0;
  const BigInt p(std::to_string(field.p()));
  for (unsigned e : divisors(field.r())) {
    BigInt exact = 0;
    for (unsigned c : divisors(e)) {
      BigInt term;
      mpz_pow_ui(term.get_mpz_t(), p.get_mpz_t(), c);
      exact += mobius(e / c) * term;
    }
    counts[e] = std::stoull(exact.get_str());
    total += exact;
  }
  const BigInt q(std::to_string(field.q()));
  if (total != q) throw std::logic_error("degree counts do not sum to q");
  if (field.r() > 1) {
    // Non-primitive elements number fewer than 2 p^(r/2): check (nonprim)^2 < 4 p^r.
    const BigInt nonprim = q - BigInt(std::to_string(counts[field.r()]));
    if (!(nonprim * nonprim < 4 * q)) throw std::logic_error("non-primitive count exceeds 2 p^(r/2)");
  }
  return counts;
}

}  // namespace strata
