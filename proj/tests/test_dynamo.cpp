#include <cstdlib>
#include <random>

#include "doctest.h"
#include "strata/dynamo.hpp"
#include "strata/error.hpp"
#include "strata/field.hpp"

using namespace strata;

namespace {

FunctionTable square_plus(std::uint64_t q, std::uint64_t c) {
  std::vector<std::uint32_t> next(q);
  for (std::uint64_t x = 0; x < q; ++x) next[x] = static_cast<std::uint32_t>((x * x + c) % q);
  return FunctionTable(next);
}

FunctionTable identity(std::uint64_t q) {
  std::vector<std::uint32_t> next(q);
  for (std::uint64_t x = 0; x < q; ++x) next[x] = static_cast<std::uint32_t>(x);
  return FunctionTable(next);
}

FunctionTable constant(std::uint64_t q, std::uint32_t c) { return FunctionTable(std::vector<std::uint32_t>(q, c)); }

}  // namespace

TEST_CASE("tables") {
  const FieldPtr f5 = make_field(5, 1);
  CHECK(build_table(*f5, [](std::uint64_t x) { return x; }).next() == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  CHECK(build_table(*f5, [&](std::uint64_t x) { return f5->add(f5->mul(x, x), 1); }).next() ==
        std::vector<std::uint32_t>{1, 2, 0, 0, 2});
  CHECK(build_table(*f5, [](std::uint64_t) { return 3; }).next() == std::vector<std::uint32_t>(5, 3));
  CHECK_THROWS_AS(FunctionTable(std::vector<std::uint32_t>{0, 2}), Error);
}

TEST_CASE("table limit comes from the environment") {
  setenv("STRATA_TABLE_LIMIT", "16", 1);
  CHECK(table_limit() == 16);
  try {
    identity(17);
    FAIL("expected CapacityExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapacityExceeded);
  }
  CHECK(identity(16).size() == 16);
  unsetenv("STRATA_TABLE_LIMIT");
  CHECK(table_limit() == (std::uint64_t{1} << 26));
}

TEST_CASE("iterated images") {
  const ImageChain chain = iterated_images(square_plus(5, 1));
  CHECK(chain.sizes == std::vector<std::uint64_t>{5, 3});
  CHECK(chain.tail_length == 1);
  CHECK(chain.images.back().codes() == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(chain.size_at(7) == 3);

  const ImageChain id = iterated_images(identity(5));
  CHECK(id.sizes == std::vector<std::uint64_t>{5});
  CHECK(id.tail_length == 0);

  const ImageChain c = iterated_images(constant(7, 4));
  CHECK(c.sizes == std::vector<std::uint64_t>{7, 1});
  CHECK(c.images.back().codes() == std::vector<std::uint32_t>{4});
}

TEST_CASE("periodic points") {
  CHECK(periodic_set(square_plus(5, 1)) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(periodic_set(identity(6)) == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
  CHECK(periodic_set(square_plus(5, 0)) == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("strata reports") {
  const StrataReport a = strata_report(square_plus(5, 1));
  CHECK(a.periodic_count == 3);
  CHECK(a.strata == std::map<std::uint64_t, std::uint64_t>{{0, 2}});

  const StrataReport b = strata_report(square_plus(5, 0));
  CHECK(b.periodic_count == 2);
  CHECK(b.tail_length == 2);
  CHECK(b.strata == std::map<std::uint64_t, std::uint64_t>{{0, 2}, {1, 1}});
  CHECK(b.image_size(0) == 5);
  CHECK(b.image_size(1) == 3);
  CHECK(b.image_size(2) == 2);
  CHECK(b.image_size(40) == 2);
  CHECK(b.w(1) == Rational(1, 5));
  CHECK(b.w(5) == 0);
  CHECK(b.image_proportion(1) == Rational(3, 5));

  const StrataReport c = strata_report(identity(9));
  CHECK(c.periodic_count == 9);
  CHECK(c.strata.empty());
}

TEST_CASE("tail depths") {
  const OrbitClassification sq = tail_depths(square_plus(5, 0));
  CHECK(sq.stratum(2) == 0u);
  CHECK(sq.stratum(3) == 0u);
  CHECK(sq.stratum(4) == 1u);
  CHECK(sq.periodic(0));
  CHECK(sq.periodic(1));

  const OrbitClassification c = tail_depths(constant(6, 2));
  for (std::uint64_t x = 0; x < 6; ++x) {
    if (x == 2) {
      CHECK(c.periodic(x));
    } else {
      CHECK(c.stratum(x) == 0u);
    }
  }

  const OrbitClassification sp = tail_depths(square_plus(5, 1));
  CHECK(sp.stratum(3) == 0u);
  CHECK(sp.stratum(4) == 0u);
}

TEST_CASE("w fractions") {
  const FunctionTable t = square_plus(5, 0);
  CHECK(w_fraction(t, 0, 1) == Rational(2, 5));
  CHECK(w_fraction(t, 0, 3) == Rational(3, 5));
  CHECK(w_fraction(t, 4, 9) == 0);
  CHECK_THROWS_AS(w_fraction(t, 3, 3), Error);
  CHECK_THROWS_AS(strata_report(t).w(2, 1), Error);
}

TEST_CASE("long tails and many components") {
  // A path 0 <- 1 <- ... <- 999 feeding a fixed point, next to a 10-cycle.
  std::vector<std::uint32_t> next(1010);
  next[0] = 0;
  for (std::uint32_t x = 1; x < 1000; ++x) next[x] = x - 1;
  for (std::uint32_t x = 0; x < 10; ++x) next[1000 + x] = 1000 + (x + 1) % 10;
  const FunctionTable t(next);
  const StrataReport report = strata_report(t);
  CHECK(report.periodic_count == 11);
  CHECK(report.tail_length == 999);
  CHECK(report.strata.size() == 999);
  CHECK(tail_depths(t).stratum(1) == 998u);
  CHECK(iterated_images(t).tail_length == 999);
}

TEST_CASE("random tables agree across algorithms") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t q = 1 + rng() % 3000;
    std::vector<std::uint32_t> next(q);
    for (auto& v : next) v = static_cast<std::uint32_t>(rng() % q);
    const FunctionTable t(next);
    const ImageChain chain = iterated_images(t);
    const StrataReport report = strata_report(t);
    const OrbitClassification cls = tail_depths(t);
    CHECK(chain.tail_length == report.tail_length);
    CHECK(chain.images.back().codes() == periodic_set(t));
    std::uint64_t total = report.periodic_count;
    for (const auto& [n, size] : report.strata) total += size;
    CHECK(total == q);
    std::map<std::uint64_t, std::uint64_t> counted;
    for (std::uint64_t x = 0; x < q; ++x) {
      if (const auto n = cls.stratum(x)) ++counted[*n];
    }
    CHECK(counted == report.strata);
  }
}
