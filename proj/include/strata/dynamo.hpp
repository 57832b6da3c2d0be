#ifndef STRATA_DYNAMO_HPP
#define STRATA_DYNAMO_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "strata/field.hpp"
#include "strata/rational.hpp"

namespace strata {

/// A total self-map of {0, ..., size-1}; next[i] is the code of f(i).
class FunctionTable {
 public:
  /// Throws BadRange if some entry is out of range, CapacityExceeded past the table limit.
  explicit FunctionTable(std::vector<std::uint32_t> next);

  std::uint64_t size() const noexcept { return next_.size(); }
  std::uint32_t operator[](std::uint64_t i) const noexcept { return next_[i]; }
  const std::vector<std::uint32_t>& next() const noexcept { return next_; }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::vector<std::uint32_t> next_;
};

/// Materializes f over the field's elements in code order.
FunctionTable build_table(const Field& field, const std::function<std::uint64_t(std::uint64_t)>& f);

/// Dense bit-vector over [0, size).
class CodeSet {
 public:
  CodeSet() = default;
  explicit CodeSet(std::uint64_t size, bool full = false);

  std::uint64_t size() const noexcept { return size_; }
  bool contains(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
  void insert(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::uint64_t count() const noexcept;
  bool is_subset_of(const CodeSet& other) const noexcept;
  std::vector<std::uint32_t> codes() const;

  friend bool operator==(const CodeSet&, const CodeSet&) = default;

 private:
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// images[k] = f^k(S) for k = 0..tail_length, where tail_length is the first
/// index with f^k(S) = f^(k+1)(S).
struct ImageChain {
  std::vector<CodeSet> images;
  std::vector<std::uint64_t> sizes;
  std::uint64_t tail_length = 0;

  /// |f^k(S)|, reading the stabilized size past tail_length.
  std::uint64_t size_at(std::uint64_t k) const { return sizes[std::min<std::uint64_t>(k, tail_length)]; }
};

/// Periodic count and the sizes of the nonempty strata W_n = f^n(S) \ f^(n+1)(S).
struct StrataReport {
  std::uint64_t q = 0;
  std::uint64_t periodic_count = 0;
  std::uint64_t tail_length = 0;
  std::map<std::uint64_t, std::uint64_t> strata;

  std::uint64_t image_size(std::uint64_t k) const;
  Rational w(std::uint64_t n) const;
  /// |f^m(S) \ f^n(S)| / q; throws BadRange unless m < n.
  Rational w(std::uint64_t m, std::uint64_t n) const;
  Rational image_proportion(std::uint64_t n) const;

  friend bool operator==(const StrataReport&, const StrataReport&) = default;
};

/// stratum[i] is the n with i in W_n, or nullopt when i is periodic.
struct OrbitClassification {
  std::vector<std::int64_t> depth;  // -1 marks a periodic point

  bool periodic(std::uint64_t i) const { return depth[i] < 0; }
  std::optional<std::uint64_t> stratum(std::uint64_t i) const {
    if (depth[i] < 0) return std::nullopt;
    return static_cast<std::uint64_t>(depth[i]);
  }
};

/// Naive set iteration with materialized bit-vectors.
ImageChain iterated_images(const FunctionTable& t);

/// Periodic points by in-degree peeling; sorted codes.
std::vector<std::uint32_t> periodic_set(const FunctionTable& t);

/// Strata from the image chain sizes, computed by layered peeling in O(q):
/// f^(k+1)(S) is the set of points that keep a preimage inside f^k(S).
StrataReport strata_report(const FunctionTable& t);

/// Independent route: cycle detection by forward walks, then the longest
/// reversed path into each strictly preperiodic point.
OrbitClassification tail_depths(const FunctionTable& t);

/// w_{m,n} = (|f^m(S)| - |f^n(S)|) / q.
Rational w_fraction(const FunctionTable& t, std::uint64_t m, std::uint64_t n);

}  // namespace strata

#endif  // STRATA_DYNAMO_HPP
