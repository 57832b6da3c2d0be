#ifndef STRATA_FIELD_HPP
#define STRATA_FIELD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace strata {

/// Upper bound on q for operations that materialize a length-q table.
/// Defaults to 2^26; overridden by the STRATA_TABLE_LIMIT environment variable.
std::uint64_t table_limit();

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// The finite field F_{p^r} realized as F_p[s]/(modulus).
///
/// Elements are addressed by their canonical code sum(coeffs[i] * p^i), so the
/// kernel below works directly on codes in [0, q). Instances are immutable and
/// shared between workers through std::shared_ptr<const Field>.
class Field {
 public:
  /// Uses the monic irreducible of degree r with the smallest canonical code.
  static std::shared_ptr<const Field> make(std::uint64_t p, unsigned r);

  /// Uses a caller-chosen modulus (length r+1, monic); throws BadRange if it is
  /// not irreducible over F_p.
  static std::shared_ptr<const Field> with_modulus(std::uint64_t p,
                                                   std::vector<std::uint64_t> modulus);

  std::uint64_t p() const noexcept { return p_; }
  unsigned r() const noexcept { return r_; }
  std::uint64_t q() const noexcept { return q_; }
  std::span<const std::uint64_t> modulus() const noexcept { return modulus_; }

  /// Canonical code of the modulus including its degree-r term, in decimal.
  std::string modulus_code() const;
  /// Serialized field description "p,r,modulus-code".
  std::string description() const;

  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && r_ == other.r_ && modulus_ == other.modulus_;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p_); }
  /// Code of the prime-field element k mod p.
  std::uint64_t from_int(std::uint64_t k) const noexcept { return k % p_; }

  std::vector<std::uint64_t> decode(std::uint64_t code) const;
  std::uint64_t encode(std::span<const std::uint64_t> coeffs) const;

  /// Smallest e | r with a^(p^e) = a.
  unsigned degree_over_prime(std::uint64_t a) const;

 private:
  Field(std::uint64_t p, unsigned r, std::vector<std::uint64_t> modulus);

  std::uint64_t mul_binary(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul_general(std::uint64_t a, std::uint64_t b) const;

  std::uint64_t p_;
  unsigned r_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  unsigned __int128 binary_modulus_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

/// make_field: the deterministic realization of F_{p^r}.
inline FieldPtr make_field(std::uint64_t p, unsigned r) { return Field::make(p, r); }

/// Value-level element that remembers its field; mixing fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::uint64_t code);

  static FieldElement zero(FieldPtr field) { return {std::move(field), 0}; }
  static FieldElement one(FieldPtr field) { return {std::move(field), 1}; }

  const FieldPtr& field() const noexcept { return field_; }
  std::uint64_t code() const noexcept { return code_; }
  std::vector<std::uint64_t> coeffs() const { return field_->decode(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  unsigned degree_over_prime() const { return field_->degree_over_prime(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  std::uint64_t code_;
};

std::uint64_t encode(const FieldElement& x);
FieldElement decode(const FieldPtr& field, std::uint64_t code);
FieldElement from_coeffs(const FieldPtr& field, std::span<const std::uint64_t> coeffs);

/// Number of elements of each exact degree e | r over F_p, by Mobius inversion.
std::map<unsigned, std::uint64_t> count_by_degree(const Field& field);

std::vector<unsigned> divisors(unsigned n);
int mobius(unsigned n);

}  // namespace strata

#endif  // STRATA_FIELD_HPP
