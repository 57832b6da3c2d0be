#include "strata/dynamo.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "strata/error.hpp"

namespace strata {

FunctionTable::FunctionTable(std::vector<std::uint32_t> next) : next_(std::move(next)) {
  if (next_.size() > table_limit()) {
    throw Error(ErrorCode::CapacityExceeded,
                "table of size " + std::to_string(next_.size()) + " exceeds limit " +
                    std::to_string(table_limit()));
  }
  for (std::uint32_t v : next_) {
    if (v >= next_.size()) throw Error(ErrorCode::BadRange, "table entry out of range");
  }
}

FunctionTable build_table(const Field& field, const std::function<std::uint64_t(std::uint64_t)>& f) {
  const std::uint64_t q = field.q();
  if (q > table_limit() || q > UINT32_MAX) {
    throw Error(ErrorCode::CapacityExceeded,
                "q = " + std::to_string(q) + " exceeds table limit " + std::to_string(table_limit()));
  }
  std::vector<std::uint32_t> next(q);
  for (std::uint64_t x = 0; x < q; ++x) next[x] = static_cast<std::uint32_t>(f(x));
  return FunctionTable(std::move(next));
}

CodeSet::CodeSet(std::uint64_t size, bool full) : size_(size), words_((size + 63) / 64, 0) {
  if (full && size) {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    if (size % 64) words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
  }
}

std::uint64_t CodeSet::count() const noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool CodeSet::is_subset_of(const CodeSet& other) const noexcept {
  if (size_ != other.size_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::vector<std::uint32_t> CodeSet::codes() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

ImageChain iterated_images(const FunctionTable& t) {
  const std::uint64_t q = t.size();
  ImageChain chain;
  chain.images.emplace_back(q, true);
  chain.sizes.push_back(q);
  while (true) {
    const CodeSet& current = chain.images.back();
    CodeSet next(q);
    for (std::uint32_t x : current.codes()) next.insert(t[x]);
    const std::uint64_t size = next.count();
    if (size == chain.sizes.back()) {
      // Nested sets of equal size are equal.
      if (!(next == current)) throw std::logic_error("image chain not nested");
      break;
    }
    if (!next.is_subset_of(current)) throw std::logic_error("image chain not nested");
    chain.images.push_back(std::move(next));
    chain.sizes.push_back(size);
  }
  chain.tail_length = chain.sizes.size() - 1;
  return chain;
}

std::vector<std::uint32_t> periodic_set(const FunctionTable& t) {
  const std::uint64_t q = t.size();
  std::vector<std::uint32_t> indegree(q, 0);
  for (std::uint64_t x = 0; x < q; ++x) ++indegree[t[x]];
  std::vector<std::uint32_t> stack;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (indegree[x] == 0) stack.push_back(static_cast<std::uint32_t>(x));
  }
  std::vector<bool> removed(q, false);
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    removed[x] = true;
    if (--indegree[t[x]] == 0) stack.push_back(t[x]);
  }
  std::vector<std::uint32_t> out;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (!removed[x]) out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

StrataReport strata_report(const FunctionTable& t) {
  const std::uint64_t q = t.size();
  StrataReport report;
  report.q = q;
  std::vector<std::uint32_t> indegree(q, 0);
  for (std::uint64_t x = 0; x < q; ++x) ++indegree[t[x]];

  std::vector<std::uint32_t> layer;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (indegree[x] == 0) layer.push_back(static_cast<std::uint32_t>(x));
  }
  std::uint64_t removed = 0;
  std::uint64_t n = 0;
  std::vector<std::uint32_t> next_layer;
  while (!layer.empty()) {
    report.strata[n] = layer.size();
    removed += layer.size();
    next_layer.clear();
    for (std::uint32_t x : layer) {
      if (--indegree[t[x]] == 0) next_layer.push_back(t[x]);
    }
    layer.swap(next_layer);
    ++n;
  }
  report.tail_length = n;
  report.periodic_count = q - removed;
  return report;
}

OrbitClassification tail_depths(const FunctionTable& t) {
  const std::uint64_t q = t.size();
  OrbitClassification out;
  out.depth.assign(q, 0);

  // Periodicity via forward walks: 0 = unvisited, 1 = on the current walk, 2 = done.
  std::vector<std::uint8_t> state(q, 0);
  std::vector<bool> on_cycle(q, false);
  std::vector<std::uint32_t> path;
  for (std::uint64_t start = 0; start < q; ++start) {
    if (state[start]) continue;
    path.clear();
    std::uint32_t x = static_cast<std::uint32_t>(start);
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = t[x];
    }
    if (state[x] == 1) {
      // x closes a new cycle.
      std::uint32_t y = x;
      do {
        on_cycle[y] = true;
        y = t[y];
      } while (y != x);
    }
    for (std::uint32_t v : path) state[v] = 2;
  }

  // Longest reversed path: walk forward from each source and push depths down
  // the tree, stopping once nothing improves.
  std::vector<bool> has_preimage(q, false);
  for (std::uint64_t x = 0; x < q; ++x) has_preimage[t[x]] = true;
  for (std::uint64_t s = 0; s < q; ++s) {
    if (has_preimage[s] || on_cycle[s]) continue;
    std::int64_t depth = 0;
    std::uint32_t x = t[s];
    while (!on_cycle[x] && out.depth[x] < depth + 1) {
      out.depth[x] = ++depth;
      x = t[x];
    }
  }
  for (std::uint64_t x = 0; x < q; ++x) {
    if (on_cycle[x]) out.depth[x] = -1;
  }
  return out;
}

std::uint64_t StrataReport::image_size(std::uint64_t k) const {
  std::uint64_t size = periodic_count;
  for (auto it = strata.lower_bound(k); it != strata.end(); ++it) size += it->second;
  return size;
}

Rational StrataReport::w(std::uint64_t n) const { return w(n, n + 1); }

Rational StrataReport::w(std::uint64_t m, std::uint64_t n) const {
  if (m >= n) {
    throw Error(ErrorCode::BadRange, "w_{m,n} needs m < n, got m=" + std::to_string(m) +
                                         ", n=" + std::to_string(n));
  }
  return make_rational(image_size(m) - image_size(n), q);
}

Rational StrataReport::image_proportion(std::uint64_t n) const { return make_rational(image_size(n), q); }

Rational w_fraction(const FunctionTable& t, std::uint64_t m, std::uint64_t n) {
  if (m >= n) {
    throw Error(ErrorCode::BadRange, "w_{m,n} needs m < n, got m=" + std::to_string(m) +
                                         ", n=" + std::to_string(n));
  }
  return strata_report(t).w(m, n);
}

}  // namespace strata
