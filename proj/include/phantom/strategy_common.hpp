#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "phantom/bits.hpp"
#include "phantom/board.hpp"
#include "phantom/params.hpp"
#include "phantom/random.hpp"

namespace phantom {

/// One instruction from a Maker strategy.
struct MakerMove {
  enum class Kind : std::uint8_t { Attempt, Forfeit, Done };
  Kind kind = Kind::Forfeit;
  Edge edge{};

  static MakerMove attempt(Edge e) { return {Kind::Attempt, e}; }
  static MakerMove forfeit() { return {Kind::Forfeit, {}}; }
  /// The strategy believes its certificate is complete.
  static MakerMove done() { return {Kind::Done, {}}; }
};

/// One instruction from a Breaker strategy.
struct BreakerMove {
  bool forfeit = false;
  Edge edge{};

  static BreakerMove claim(Edge e) { return {false, e}; }
  static BreakerMove give_up() { return {true, {}}; }
};

/// What a Maker strategy hands the engine as proof of a win.
struct Certificate {
  enum class Kind : std::uint8_t { Matching, Cycle };
  Kind kind = Kind::Matching;
  /// Partner map for Matching, vertex order for Cycle.
  std::vector<int> data;
};

inline void encode_set(StateKey& key, const IndexedSet& s, int universe) {
  std::uint64_t word = 0;
  for (int v = 0; v < universe; ++v) {
    if (s.contains(v)) word |= std::uint64_t{1} << (v & 63);
    if ((v & 63) == 63 || v == universe - 1) {
      key.push_back(word);
      word = 0;
    }
  }
}

/// Candidate partners w of v for a "uniform incident edge" draw: w != v, vw
/// not Maker's, vw not revealed (knowledge-aware mode), w not in `exclude`,
/// and w in `restrict_to` when given.
class IncidentCandidates {
 public:
  IncidentCandidates(const MakerKnowledge& know, int v, Sampling mode, const VertexSet* exclude = nullptr,
                     const VertexSet* restrict_to = nullptr)
      : know_(know), v_(v), mode_(mode), exclude_(exclude), restrict_(restrict_to) {}

  std::uint64_t word(int i) const {
    std::uint64_t w = ~know_.mine().row(v_)[i];
    if (mode_ == Sampling::KnowledgeAware) w &= ~know_.revealed_matrix().row(v_)[i];
    if (exclude_) w &= ~exclude_->words()[i];
    if (restrict_) w &= restrict_->words()[i];
    if (i == (v_ >> 6)) w &= ~(std::uint64_t{1} << (v_ & 63));
    return w;
  }

  int count() const {
    return count_bits(know_.n(), 0, [this](int i) { return word(i); });
  }

  /// Uniform draw; nullopt when no candidate exists.
  std::optional<int> draw(RandomSource& rng) const {
    const int c = count();
    if (c == 0) return std::nullopt;
    const auto r = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(c)));
    return select_bit(know_.n(), 0, r, [this](int i) { return word(i); });
  }

 private:
  const MakerKnowledge& know_;
  int v_;
  Sampling mode_;
  const VertexSet* exclude_;
  const VertexSet* restrict_;
};

/// Edges of E(C, V \ C) for a vertex set C, minus edges Maker knows about.
/// Counting runs over whichever side of the cut is smaller; every cross edge
/// is counted exactly once either way, so draws stay uniform.
class CrossEdges {
 public:
  CrossEdges(const MakerKnowledge& know, const VertexSet& side, int side_size, Sampling mode)
      : know_(know), side_(side), mode_(mode), inside_(side_size * 2 <= know.n()) {}

  std::int64_t count() const {
    std::int64_t total = 0;
    for_each_anchor([&](int c) {
      total += row_count(c);
      return false;
    });
    return total;
  }

  std::optional<Edge> draw(RandomSource& rng) const {
    const std::int64_t total = count();
    if (total == 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(total)));
    std::optional<Edge> out;
    for_each_anchor([&](int c) {
      const int cnt = row_count(c);
      if (r < cnt) {
        const int w = select_bit(know_.n(), 0, static_cast<int>(r), [&](int i) { return word(c, i); });
        out = Edge{c, w};
        return true;
      }
      r -= cnt;
      return false;
    });
    return out;
  }

 private:
  std::uint64_t word(int c, int i) const {
    std::uint64_t w = ~know_.mine().row(c)[i];
    if (mode_ == Sampling::KnowledgeAware) w &= ~know_.revealed_matrix().row(c)[i];
    const std::uint64_t s = side_.words()[i];
    return inside_ ? (w & ~s) : (w & s);
  }
  int row_count(int c) const {
    return count_bits(know_.n(), 0, [&](int i) { return word(c, i); });
  }
  template <class Fn>
  void for_each_anchor(Fn&& fn) const {
    const int n = know_.n();
    const auto s = side_.words();
    for (int i = 0; i < words_for(n); ++i) {
      std::uint64_t bits = (inside_ ? s[i] : ~s[i]) & range_mask(i, 0, n);
      while (bits) {
        if (fn(i * 64 + std::countr_zero(bits))) return;
        bits &= bits - 1;
      }
    }
  }

  const MakerKnowledge& know_;
  const VertexSet& side_;
  Sampling mode_;
  bool inside_;
};

/// Uniform pick of two distinct members of `s` (ordered).
inline std::pair<int, int> pick_two(const IndexedSet& s, RandomSource& rng) {
  const auto i = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(s.size())));
  auto j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(s.size() - 1)));
  if (j >= i) ++j;
  return {s.at(i), s.at(j)};
}

/// True when an edge draw must be skipped rather than submitted: Maker owns
/// it, or (knowledge-aware mode) she already knows it is Breaker's.
inline bool skip_known(const MakerView& view, Edge e, Sampling mode) {
  return view.owns(e) || (mode == Sampling::KnowledgeAware && view.revealed(e));
}

}  // namespace phantom
