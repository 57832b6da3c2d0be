#include "strata/wreath.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "strata/error.hpp"
#include "strata/parallel.hpp"

namespace strata {

namespace {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;

void require_degree(unsigned d) {
  if (d < 2) throw Error(ErrorCode::BadRange, "wreath products need d >= 2");
}

// Bits in the denominator of fix_n: d^(1 + d + ... + d^(n-1)).
long double denominator_bits(unsigned d, unsigned n) {
  long double exponent = 0;
  for (unsigned k = 0; k < n; ++k) exponent = 1 + d * exponent;
  return exponent * std::log2(static_cast<long double>(d));
}

bool subtree_fixes(const std::vector<std::uint8_t>& labels, std::size_t node, unsigned depth_left,
                   unsigned d) {
  if (depth_left == 0) return true;
  if (labels[node] != 0) return false;
  for (unsigned child = 1; child <= d; ++child) {
    if (subtree_fixes(labels, node * d + child, depth_left - 1, d)) return true;
  }
  return false;
}

template <class Rng>
bool sample_fixes(Rng& rng, unsigned d, unsigned depth_left) {
  if (depth_left == 0) return true;
  // Labels are independent, so children are drawn only when needed.
  std::uniform_int_distribution<unsigned> label(0, d - 1);
  if (label(rng) != 0) return false;
  for (unsigned child = 0; child < d; ++child) {
    if (sample_fixes(rng, d, depth_left - 1)) return true;
  }
  return false;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FixSequence fix_sequence(unsigned d, unsigned n_max, FixMode mode) {
  require_degree(d);
  FixSequence seq;
  seq.d = d;
  seq.values.reserve(n_max + 1);

  if (mode == FixMode::rational) {
    if (n_max > kExactnessHorizon || denominator_bits(d, n_max) > kMaxDenominatorBits) {
      throw Error(ErrorCode::ExactnessHorizon, "rational fix_n for d=" + std::to_string(d) +
                                                   ", n=" + std::to_string(n_max) + " is past the horizon");
    }
    Rational x = 1;
    seq.values.push_back({0, x, 1.0L, 0.0L});
    for (unsigned k = 1; k <= n_max; ++k) {
      // (1 - x) = a/b in lowest terms, so (1 - x)^d = a^d / b^d needs no reduction.
      const Rational complement = 1 - x;
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), complement.get_num().get_mpz_t(), d);
      mpz_pow_ui(den.get_mpz_t(), complement.get_den().get_mpz_t(), d);
      x = Rational(den - num, den * d);
      x.canonicalize();
      seq.values.push_back({k, x, to_long_double(x), std::ldexp(1.0L, -62)});
    }
    return seq;
  }

  long double x = 1.0L;
  long double err = 0.0L;
  seq.values.push_back({0, std::nullopt, x, err});
  const long double local = (2.0L * d + 4.0L) * kUnit;
  for (unsigned k = 1; k <= n_max; ++k) {
    const long double y = 1.0L - x;
    long double power = y;
    for (unsigned i = 1; i < d; ++i) power *= y;
    x = (1.0L - power) / static_cast<long double>(d);
    // The step map has Lipschitz constant (1 - x)^(d-1) <= 1.
    err += local;
    seq.values.push_back({k, std::nullopt, x, err});
  }
  return seq;
}

FixEntry fix_exact(unsigned d, unsigned n, FixMode mode) { return fix_sequence(d, n, mode).values.back(); }

Rational fix_enumerate_oracle(unsigned d, unsigned n) {
  require_degree(d);
  std::uint64_t internal = 0;
  for (unsigned k = 0; k < n; ++k) {
    internal = 1 + d * internal;
    if (internal > 20) break;
  }
  std::uint64_t order = 1;
  for (std::uint64_t i = 0; i < internal; ++i) {
    order *= d;
    if (order > (std::uint64_t{1} << 20)) {
      throw Error(ErrorCode::CapacityExceeded, "group order exceeds 2^20");
    }
  }
  // Heap layout: children of node i are i*d+1 .. i*d+d; nodes above depth n are internal.
  std::vector<std::uint8_t> labels(internal + 1, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t element = 0; element < order; ++element) {
    if (subtree_fixes(labels, 0, n, d)) ++hits;
    for (std::size_t i = 0; i < internal; ++i) {
      if (++labels[i] < d) break;
      labels[i] = 0;
    }
  }
  return make_rational(hits, order);
}

McEstimate fix_mc(unsigned d, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  require_degree(d);
  if (samples == 0) throw Error(ErrorCode::BadRange, "samples must be positive");
  if (workers == 0) workers = 1;
  std::vector<std::uint64_t> hits(workers, 0);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
    std::mt19937_64 rng(splitmix64(seed ^ w));
    std::uint64_t local = 0;
    for (std::uint64_t s = 0; s < share; ++s) local += sample_fixes(rng, d, n) ? 1 : 0;
    hits[w] = local;
  });
  McEstimate out;
  out.samples = samples;
  for (std::uint64_t h : hits) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

JuulBand juul_band(unsigned d, unsigned n) {
  require_degree(d);
  if (n < 1) throw Error(ErrorCode::BadRange, "the band is stated for n >= 1");
  JuulBand band;
  band.d = d;
  band.n = n;
  const long double dm1 = d - 1.0L;
  band.lower = 2.0L / (dm1 * (n + 4.0L + std::log(static_cast<long double>(n))));
  band.upper = 2.0L / (dm1 * (n + 1.0L));
  band.error_bound = 16.0L * kUnit;
  return band;
}

bool JuulBand::contains(const FixEntry& fix) const noexcept {
  return lower + error_bound < fix.value - fix.error_bound && fix.value + fix.error_bound < upper - error_bound;
}

}  // namespace strata
