#ifndef STRATA_WREATH_HPP
#define STRATA_WREATH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

/// Largest n for which rational mode is offered.
inline constexpr unsigned kExactnessHorizon = 16;
/// Rational mode also refuses denominators wider than this many bits.
inline constexpr std::uint64_t kMaxDenominatorBits = std::uint64_t{1} << 25;

enum class FixMode { rational, floating };

/// fix_n: proportion of the n-th iterated wreath product of Z/dZ (acting on
/// the depth-n d-ary tree) with a fixed leaf. `exact` is set in rational mode;
/// `value` always holds a long double with |value - fix_n| <= error_bound.
struct FixEntry {
  unsigned n = 0;
  std::optional<Rational> exact;
  long double value = 1.0L;
  long double error_bound = 0.0L;
};

struct FixSequence {
  unsigned d = 2;
  std::vector<FixEntry> values;  // n = 0..N
};

/// fix_0 = 1, fix_k = (1 - (1 - fix_{k-1})^d) / d.
/// Throws ExactnessHorizon for rational mode past the horizon.
FixSequence fix_sequence(unsigned d, unsigned n_max, FixMode mode);
FixEntry fix_exact(unsigned d, unsigned n, FixMode mode);

/// Brute force over every labeling of the internal tree nodes by Z/dZ.
/// Throws CapacityExceeded when the group order exceeds 2^20.
Rational fix_enumerate_oracle(unsigned d, unsigned n);

struct McEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate; reproducible for fixed (seed, samples, workers).
McEstimate fix_mc(unsigned d, unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 2/((d-1)(n+4+ln n)) < fix_n < 2/((d-1)(n+1)).
struct JuulBand {
  unsigned d = 2;
  unsigned n = 1;
  long double lower = 0.0L;
  long double upper = 0.0L;
  long double error_bound = 0.0L;  // on lower and upper

  /// Strict containment decided with both error bounds.
  bool contains(const FixEntry& fix) const noexcept;
};

JuulBand juul_band(unsigned d, unsigned n);

}  // namespace strata

#endif  // STRATA_WREATH_HPP
