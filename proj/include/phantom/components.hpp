#pragma once

#include <numeric>
#include <vector>

#include "phantom/bits.hpp"
#include "phantom/board.hpp"

namespace phantom {

/// Union-find over the vertices of Maker's graph. Path compression plus union
/// by size; the reported representative of a component is its smallest vertex
/// id so that outputs never depend on tree shape. Optionally keeps a member
/// bitset per component for cross-edge sampling.
class ComponentIndex {
 public:
  ComponentIndex() = default;
  explicit ComponentIndex(int n, bool track_members = false)
      : parent_(n), size_(n, 1), min_id_(n), count_(n), roots_(IndexedSet::full(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
    std::iota(min_id_.begin(), min_id_.end(), 0);
    if (track_members) {
      members_.reserve(n);
      for (int v = 0; v < n; ++v) {
        members_.emplace_back(n);
        members_.back().set(v);
      }
    }
  }

  int n() const noexcept { return static_cast<int>(parent_.size()); }
  int components() const noexcept { return count_; }

  /// Internal root of v's tree (not stable across unions).
  int root(int v) const noexcept {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  int find(int v) noexcept {
    int r = root(v);
    while (parent_[v] != r) {
      const int next = parent_[v];
      parent_[v] = r;
      v = next;
    }
    return r;
  }

  /// Smallest vertex id in v's component.
  int representative(int v) const noexcept { return min_id_[root(v)]; }
  int component_size(int v) const noexcept { return size_[root(v)]; }
  bool same(int u, int v) const noexcept { return root(u) == root(v); }

  /// Members of v's component; requires member tracking.
  const VertexSet& members(int v) const noexcept { return members_[root(v)]; }
  bool tracks_members() const noexcept { return !members_.empty(); }

  /// Current roots, one per component, in history-determined order.
  const IndexedSet& roots() const noexcept { return roots_; }

  /// Merges the components of u and v. Returns false if already joined.
  bool unite(int u, int v) {
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    if (size_[ru] < size_[rv] || (size_[ru] == size_[rv] && ru > rv)) std::swap(ru, rv);
    parent_[rv] = ru;
    size_[ru] += size_[rv];
    min_id_[ru] = std::min(min_id_[ru], min_id_[rv]);
    if (!members_.empty()) {
      members_[ru].merge(members_[rv]);
      members_[rv] = VertexSet();
    }
    roots_.erase(rv);
    --count_;
    return true;
  }

  void add_edge(Edge e) { unite(e.u, e.v); }

  bool connected() const noexcept { return count_ == 1; }

  void encode(StateKey& key) const {
    for (int v = 0; v < n(); ++v) key.push_back(static_cast<std::uint64_t>(representative(v)));
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> min_id_;
  int count_ = 0;
  IndexedSet roots_;
  std::vector<VertexSet> members_;
};

}  // namespace phantom
