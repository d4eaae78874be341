#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "phantom/bits.hpp"
#include "phantom/board.hpp"
#include "phantom/components.hpp"
#include "phantom/errors.hpp"

namespace phantom {

inline constexpr int kExactMatchingLimit = 24;
inline constexpr int kExactHamiltonLimit = 20;

inline BitMatrix make_graph(int n, std::span<const Edge> edges) {
  BitMatrix g(n);
  for (const Edge& e : edges) g.set(e);
  return g;
}

inline int graph_degree(const BitMatrix& g, int v) {
  return count_bits(g.n(), 0, [&](int i) { return g.row(v)[i]; });
}

inline bool check_mindegree(const BitMatrix& m, int k) {
  for (int v = 0; v < m.n(); ++v)
    if (graph_degree(m, v) < k) return false;
  return true;
}

inline bool check_connectivity(const BitMatrix& m) {
  const int n = m.n();
  if (n <= 1) return true;
  ComponentIndex comps(n);
  for (int u = 0; u < n; ++u) {
    const auto row = m.row(u);
    for (int w = 0; w < m.row_words(); ++w) {
      std::uint64_t bits = row[w] & range_mask(w, u + 1, n);
      while (bits) {
        comps.unite(u, w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }
  return comps.connected();
}

/// A strategy-maintained matching: partner[v] for every vertex.
inline bool verify_matching_certificate(const BitMatrix& m, std::span<const int> partner) {
  const int n = m.n();
  if (static_cast<int>(partner.size()) != n) return false;
  for (int v = 0; v < n; ++v) {
    const int p = partner[v];
    if (p < 0 || p >= n || p == v || partner[p] != v) return false;
    if (!m.test(v, p)) return false;
  }
  return true;
}

/// A strategy-maintained Hamilton cycle given as a vertex order.
inline bool verify_cycle_certificate(const BitMatrix& m, std::span<const int> order) {
  const int n = m.n();
  if (n < 3 || static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!m.test(order[i], order[(i + 1) % n])) return false;
  return true;
}

namespace detail {

inline std::vector<std::uint32_t> small_adjacency(const BitMatrix& m) {
  std::vector<std::uint32_t> adj(m.n(), 0);
  for (int v = 0; v < m.n(); ++v) adj[v] = static_cast<std::uint32_t>(m.row(v)[0]);
  return adj;
}

inline bool matching_search(std::uint32_t mask, std::uint32_t full, const std::vector<std::uint32_t>& adj,
                            std::unordered_set<std::uint32_t>& dead) {
  if (mask == full) return true;
  if (dead.contains(mask)) return false;
  const int i = std::countr_zero(~mask);
  std::uint32_t options = adj[i] & ~mask & full;
  while (options) {
    const int j = std::countr_zero(options);
    options &= options - 1;
    if (matching_search(mask | (1U << i) | (1U << j), full, adj, dead)) return true;
  }
  dead.insert(mask);
  return false;
}

}  // namespace detail

/// Exhaustive perfect-matching test by memoized search over matched-vertex
/// subsets. Limited to n <= 24.
inline bool exact_has_perfect_matching(const BitMatrix& m) {
  const int n = m.n();
  if (n % 2 != 0) return false;
  if (n > kExactMatchingLimit) throw UnsupportedError("exact perfect matching check limited to n <= 24");
  if (n == 0) return true;
  const auto adj = detail::small_adjacency(m);
  std::unordered_set<std::uint32_t> dead;
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  return detail::matching_search(0, full, adj, dead);
}

/// Held-Karp style reachability over (subset, endpoint). Limited to n <= 20.
inline bool exact_has_hamilton_cycle(const BitMatrix& m) {
  const int n = m.n();
  if (n < 3) return false;
  if (n > kExactHamiltonLimit) throw UnsupportedError("exact Hamilton check limited to n <= 20");
  const auto adj = detail::small_adjacency(m);
  const std::uint32_t full = (1U << n) - 1;
  // reach[mask]: endpoints v such that a path from vertex 0 covers exactly mask and ends at v.
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    std::uint32_t ends = reach[mask];
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t next = adj[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        reach[mask | (1U << w)] |= 1U << w;
      }
    }
  }
  return (reach[full] & adj[0]) != 0;
}

/// True iff Maker's graph contains a perfect matching. A valid tracked
/// pairing settles the question; otherwise the exact search runs for n <= 24.
inline bool check_perfect_matching(const BitMatrix& m, int n, std::span<const int> tracked = {}) {
  if (n % 2 != 0) throw DomainError("perfect matching check needs an even vertex count");
  if (!tracked.empty() && verify_matching_certificate(m, tracked)) return true;
  if (n > kExactMatchingLimit)
    throw UnsupportedError("perfect matching check for n > 24 needs a tracked pairing");
  return exact_has_perfect_matching(m);
}

/// True iff Maker's graph contains a Hamilton cycle. A valid tracked cycle
/// settles the question; otherwise the exact search runs for n <= 20.
inline bool check_hamilton(const BitMatrix& m, int n, std::span<const int> tracked = {}) {
  if (!tracked.empty() && verify_cycle_certificate(m, tracked)) return true;
  if (n > kExactHamiltonLimit)
    throw UnsupportedError("Hamilton check for n > 20 needs a tracked cycle");
  return exact_has_hamilton_cycle(m);
}

/// Dead position for a degree target: some vertex can no longer reach degree k
/// in Maker's graph because d_M(v) + d_F(v) < k.
inline bool blocked_mindegree(const BoardState& s, int k) {
  for (int v = 0; v < s.n(); ++v)
    if (s.maker_degree(v) + s.free_degree(v) < k) return true;
  return false;
}

}  // namespace phantom
