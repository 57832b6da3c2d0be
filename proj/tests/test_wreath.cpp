#include <cmath>

#include "doctest.h"
#include "strata/error.hpp"
#include "strata/wreath.hpp"

using namespace strata;

TEST_CASE("exact fixed-leaf proportions") {
  CHECK(*fix_exact(2, 0, FixMode::rational).exact == 1);
  CHECK(*fix_exact(2, 1, FixMode::rational).exact == Rational(1, 2));
  CHECK(*fix_exact(2, 2, FixMode::rational).exact == Rational(3, 8));
  CHECK(*fix_exact(2, 3, FixMode::rational).exact == Rational(39, 128));
  CHECK(*fix_exact(2, 4, FixMode::rational).exact == Rational(8463, 32768));
  CHECK(*fix_exact(3, 2, FixMode::rational).exact == Rational(19, 81));
  CHECK(*fix_exact(5, 1, FixMode::rational).exact == Rational(1, 5));
}

TEST_CASE("rational mode stops at the exactness horizon") {
  CHECK(fix_sequence(2, kExactnessHorizon, FixMode::rational).values.size() == kExactnessHorizon + 1);
  CHECK_THROWS_AS(fix_exact(2, kExactnessHorizon + 1, FixMode::rational), Error);
  CHECK(fix_exact(2, 200, FixMode::floating).value > 0);
}

TEST_CASE("float mode tracks the exact values") {
  const FixSequence exact = fix_sequence(3, 12, FixMode::rational);
  const FixSequence approx = fix_sequence(3, 12, FixMode::floating);
  for (unsigned n = 0; n <= 12; ++n) {
    const long double truth = to_long_double(*exact.values[n].exact);
    CHECK(std::fabs(approx.values[n].value - truth) <= approx.values[n].error_bound);
    CHECK_FALSE(approx.values[n].exact.has_value());
  }
}

TEST_CASE("enumeration oracle") {
  CHECK(fix_enumerate_oracle(2, 2) == Rational(3, 8));
  CHECK(fix_enumerate_oracle(3, 2) == Rational(19, 81));
  CHECK(fix_enumerate_oracle(2, 4) == Rational(8463, 32768));
  CHECK(fix_enumerate_oracle(4, 2) == *fix_exact(4, 2, FixMode::rational).exact);
  CHECK_THROWS_AS(fix_enumerate_oracle(2, 5), Error);
}

TEST_CASE("Monte-Carlo estimates") {
  const McEstimate mc = fix_mc(2, 3, 1'000'000, 11, 2);
  CHECK(std::fabs(mc.estimate - 39.0 / 128) < 4 * mc.std_error);
  CHECK(fix_mc(2, 0, 1000, 1).estimate == 1.0);
  CHECK(std::fabs(fix_mc(5, 1, 200'000, 3).estimate - 0.2) < 0.01);

  const McEstimate a = fix_mc(3, 5, 100'000, 42, 4);
  const McEstimate b = fix_mc(3, 5, 100'000, 42, 4);
  CHECK(a.hits == b.hits);
  CHECK(a.samples == 100'000);
}

TEST_CASE("band examples") {
  const JuulBand b1 = juul_band(2, 1);
  CHECK(b1.lower == doctest::Approx(0.4));
  CHECK(b1.upper == doctest::Approx(1.0));
  const JuulBand b2 = juul_band(2, 2);
  CHECK(b2.lower == doctest::Approx(2 / (6 + std::log(2.0))));
  CHECK(b2.contains(fix_exact(2, 2, FixMode::rational)));
  const JuulBand b3 = juul_band(3, 2);
  CHECK(b3.lower == doctest::Approx(0.1494).epsilon(1e-3));
  CHECK(b3.upper == doctest::Approx(1.0 / 3));
  CHECK(b3.contains(fix_exact(3, 2, FixMode::rational)));
  CHECK_THROWS_AS(juul_band(2, 0), Error);
}

TEST_CASE("band containment and monotone decrease") {
  for (unsigned d = 2; d <= 6; ++d) {
    const FixSequence seq = fix_sequence(d, 30, FixMode::floating);
    for (unsigned n = 1; n <= 30; ++n) {
      CHECK(seq.values[n].error_bound < 1e-12L);
      CHECK(juul_band(d, n).contains(seq.values[n]));
      if (n < 30) CHECK(seq.values[n + 1].value + seq.values[n + 1].error_bound < seq.values[n].value - seq.values[n].error_bound);
    }
  }
}
