#include <random>
#include <vector>

#include "doctest.h"
#include "strata/error.hpp"
#include "strata/field.hpp"
#include "strata/suites.hpp"

using namespace strata;

namespace {

std::vector<std::uint64_t> modulus_of(const FieldPtr& f) { return {f->modulus().begin(), f->modulus().end()}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadRange;
}

}  // namespace

TEST_CASE("field construction picks the smallest monic irreducible") {
  const FieldPtr f5 = make_field(5, 1);
  CHECK(f5->q() == 5);
  CHECK(modulus_of(f5) == std::vector<std::uint64_t>{0, 1});

  const FieldPtr f4 = make_field(2, 2);
  CHECK(f4->q() == 4);
  CHECK(modulus_of(f4) == std::vector<std::uint64_t>{1, 1, 1});

  const FieldPtr f9 = make_field(3, 2);
  CHECK(f9->q() == 9);
  CHECK(modulus_of(f9) == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(f9->description() == "3,2,10");
}

TEST_CASE("field construction errors") {
  CHECK(code_of([] { make_field(4, 1); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { make_field(1, 1); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { make_field(2, 64); }) == ErrorCode::CapacityExceeded);
  CHECK(code_of([] { make_field(3, 41); }) == ErrorCode::CapacityExceeded);
  CHECK(make_field(2, 63)->q() == (std::uint64_t{1} << 63));
  CHECK(code_of([] { Field::with_modulus(3, {2, 0, 1}); }) == ErrorCode::BadRange);  // s^2 + 2 = (s-1)(s+1)
}

TEST_CASE("arithmetic examples") {
  const FieldPtr f5 = make_field(5, 1);
  CHECK(FieldElement(f5, 2).inverse() == FieldElement(f5, 3));

  const FieldPtr f4 = make_field(2, 2);
  const FieldElement s(f4, 2);
  CHECK((s * s).code() == 3);  // s + 1

  const FieldPtr f9 = make_field(3, 2);
  CHECK(FieldElement(f9, 3).pow(2).code() == 2);  // s^2 = -1

  CHECK((FieldElement(f9, 5) - FieldElement(f9, 5)).is_zero());
  CHECK((FieldElement(f9, 7) / FieldElement(f9, 7)) == FieldElement::one(f9));
  CHECK(-FieldElement(f5, 1) == FieldElement(f5, 4));
}

TEST_CASE("arithmetic errors") {
  const FieldPtr f5 = make_field(5, 1);
  const FieldPtr f7 = make_field(7, 1);
  CHECK(code_of([&] { FieldElement::zero(f5).inverse(); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { (void)(FieldElement(f5, 1) / FieldElement(f5, 0)); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { (void)(FieldElement(f5, 1) + FieldElement(f7, 1)); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([&] { (void)(FieldElement(f5, 1) == FieldElement(f7, 1)); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([&] { FieldElement(f5, 5); }) == ErrorCode::CodeOutOfRange);
}

TEST_CASE("element codec") {
  const FieldPtr f4 = make_field(2, 2);
  const std::vector<std::uint64_t> s_coeffs{0, 1};
  CHECK(encode(from_coeffs(f4, s_coeffs)) == 2);

  const FieldPtr f9 = make_field(3, 2);
  CHECK(decode(f9, 5).coeffs() == std::vector<std::uint64_t>{2, 1});

  const FieldPtr f5 = make_field(5, 1);
  CHECK(decode(f5, 0) == FieldElement::zero(f5));
  CHECK_THROWS_AS(decode(f5, 9), Error);

  const FieldPtr big = make_field(3, 40);
  for (std::uint64_t code : {std::uint64_t{0}, std::uint64_t{1}, big->q() / 3, big->q() - 1}) {
    CHECK(encode(from_coeffs(big, decode(big, code).coeffs())) == code);
  }
}

TEST_CASE("degree over the prime field") {
  const FieldPtr f7 = make_field(7, 1);
  for (std::uint64_t a = 0; a < 7; ++a) CHECK(FieldElement(f7, a).degree_over_prime() == 1);
  const FieldPtr f4 = make_field(2, 2);
  CHECK(FieldElement(f4, 2).degree_over_prime() == 2);
  CHECK(FieldElement(f4, 1).degree_over_prime() == 1);
}

TEST_CASE("count_by_degree examples") {
  CHECK(count_by_degree(*make_field(2, 2)) == std::map<unsigned, std::uint64_t>{{1, 2}, {2, 2}});
  CHECK(count_by_degree(*make_field(3, 1)) == std::map<unsigned, std::uint64_t>{{1, 3}});
  CHECK(count_by_degree(*make_field(2, 4)) == std::map<unsigned, std::uint64_t>{{1, 2}, {2, 2}, {4, 12}});
  // Large fields: totals still reach q.
  for (const auto& [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 60}, {3, 36}, {65521, 4}}) {
    const FieldPtr f = make_field(p, r);
    std::uint64_t total = 0;
    for (const auto& [e, count] : count_by_degree(*f)) total += count;
    CHECK(total == f->q());
  }
}

TEST_CASE("divisors and mobius") {
  CHECK(divisors(12) == std::vector<unsigned>{1, 2, 3, 4, 6, 12});
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
}

TEST_CASE("primality") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(100003));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(18446744073709551615ULL));
}

TEST_CASE("Lagrange and Frobenius on large fields") {
  std::mt19937_64 rng(99);
  for (const auto& [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2305843009213693951ULL, 1}, {2, 63}, {3, 40}, {65537, 3}, {4294967291ULL, 2}}) {
    const FieldPtr f = make_field(p, r);
    std::uniform_int_distribution<std::uint64_t> pick(1, f->q() - 1);
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t a = pick(rng);
      const std::uint64_t b = pick(rng);
      CHECK(f->pow(a, f->q() - 1) == 1);
      CHECK(f->mul(a, f->inv(a)) == 1);
      CHECK(f->frobenius(f->mul(a, b)) == f->mul(f->frobenius(a), f->frobenius(b)));
      CHECK(f->frobenius(f->add(a, b)) == f->add(f->frobenius(a), f->frobenius(b)));
    }
  }
}

TEST_CASE("field invariant suite") {
  const SuiteResult result = field_suite(4096);
  INFO(result.summary);
  for (const auto& failure : result.failures) INFO(failure);
  CHECK(result.passed);
}
