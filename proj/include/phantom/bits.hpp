#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "phantom/errors.hpp"

namespace phantom {

/// An edge of K_n in canonical order u < v.
struct Edge {
  int u = 0;
  int v = 0;

  constexpr Edge() = default;
  constexpr Edge(int x, int y) : u(x < y ? x : y), v(x < y ? y : x) {}

  constexpr bool contains(int w) const noexcept { return u == w || v == w; }
  constexpr int other(int w) const noexcept { return u == w ? v : u; }
  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr int words_for(int n) { return (n + 63) / 64; }

/// Fixed-size bitset over vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_(words_for(n), 0) {}

  int size_bits() const noexcept { return n_; }
  bool test(int v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(int v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }
  void merge(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }
  int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Symmetric n x n adjacency bit matrix. Rows are contiguous so that
/// per-vertex scans cost n/64 word operations.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n)
      : n_(n), words_(words_for(n)), bits_(static_cast<std::size_t>(n) * words_for(n), 0) {}

  int n() const noexcept { return n_; }
  int row_words() const noexcept { return words_; }

  bool test(int u, int v) const noexcept {
    return (bits_[index(u, v)] >> (v & 63)) & 1U;
  }
  bool test(Edge e) const noexcept { return test(e.u, e.v); }

  void set(Edge e) noexcept {
    bits_[index(e.u, e.v)] |= std::uint64_t{1} << (e.v & 63);
    bits_[index(e.v, e.u)] |= std::uint64_t{1} << (e.u & 63);
  }

  std::span<const std::uint64_t> row(int u) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
  }
  std::span<const std::uint64_t> raw() const noexcept { return bits_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t index(int u, int v) const noexcept {
    return static_cast<std::size_t>(u) * words_ + (v >> 6);
  }
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Position of the r-th (0-based) set bit of w. Requires r < popcount(w).
inline int select_in_word(std::uint64_t w, int r) noexcept {
  for (int i = 0; i < r; ++i) w &= w - 1;
  return std::countr_zero(w);
}

/// Mask of valid bits for word `i` when only positions [from, n) count.
inline std::uint64_t range_mask(int i, int from, int n) noexcept {
  std::uint64_t m = ~std::uint64_t{0};
  const int lo = i * 64;
  if (from > lo) m = (from - lo >= 64) ? 0 : (m << (from - lo));
  if (n < lo + 64) m &= (n - lo <= 0) ? 0 : (~std::uint64_t{0} >> (64 - (n - lo)));
  return m;
}

/// Counts positions p in [from, n) where `pred_word(i)` has bit p set.
template <class WordFn>
int count_bits(int n, int from, WordFn&& word) {
  int c = 0;
  for (int i = from >> 6; i < words_for(n); ++i) c += std::popcount(word(i) & range_mask(i, from, n));
  return c;
}

/// Position of the r-th set bit within [from, n) of the word stream, or -1.
template <class WordFn>
int select_bit(int n, int from, int r, WordFn&& word) {
  for (int i = from >> 6; i < words_for(n); ++i) {
    const std::uint64_t w = word(i) & range_mask(i, from, n);
    const int c = std::popcount(w);
    if (r < c) return i * 64 + select_in_word(w, r);
    r -= c;
  }
  return -1;
}

/// Fenwick tree over per-row counts; supports rank selection across rows.
class RowRankIndex {
 public:
  RowRankIndex() = default;
  explicit RowRankIndex(std::span<const std::int64_t> counts)
      : tree_(counts.size() + 1, 0), counts_(counts.begin(), counts.end()) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      total_ += counts[i];
      for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += counts[i];
    }
  }

  std::int64_t total() const noexcept { return total_; }
  std::int64_t count(int row) const noexcept { return counts_[row]; }

  void add(int row, std::int64_t delta) noexcept {
    counts_[row] += delta;
    total_ += delta;
    for (std::size_t j = row + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += delta;
  }

  /// Row containing global rank r, with r rewritten to the rank within that row.
  int locate(std::int64_t& r) const noexcept {
    std::size_t pos = 0;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= r) {
        pos += step;
        r -= tree_[pos];
      }
    }
    return static_cast<int>(pos);
  }

  friend bool operator==(const RowRankIndex&, const RowRankIndex&) = default;

 private:
  std::vector<std::int64_t> tree_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Dense set of small integers with O(1) insert, erase and uniform access by
/// position. Iteration order depends only on the operation history.
class IndexedSet {
 public:
  IndexedSet() = default;
  explicit IndexedSet(int universe) : pos_(universe, -1) {}

  static IndexedSet full(int universe) {
    IndexedSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  bool contains(int v) const noexcept { return pos_[v] >= 0; }
  int size() const noexcept { return static_cast<int>(items_.size()); }
  bool empty() const noexcept { return items_.empty(); }
  int at(int i) const noexcept { return items_[i]; }
  std::span<const int> items() const noexcept { return items_; }

  void insert(int v) {
    if (pos_[v] >= 0) return;
    pos_[v] = static_cast<int>(items_.size());
    items_.push_back(v);
  }
  void erase(int v) {
    const int p = pos_[v];
    if (p < 0) return;
    const int last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[v] = -1;
  }

  friend bool operator==(const IndexedSet&, const IndexedSet&) = default;

 private:
  std::vector<int> pos_;
  std::vector<int> items_;
};

}  // namespace phantom
