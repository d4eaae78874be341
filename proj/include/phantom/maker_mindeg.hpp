#pragma once

#include <vector>

#include "phantom/strategy_common.hpp"

namespace phantom {

/// Mindegree-k strategy for b > 2a/k: visit the vertices in uniformly random
/// order and push each one to degree k by uniform incident attempts. Vertex
/// choices are grouped into phases of ceil(eps n) choices; a phase that runs
/// longer than ceil(2k eps n / a) rounds makes Maker forfeit.
class MindegLargeMaker {
 public:
  explicit MindegLargeMaker(const StrategyParams& p) : p_(p), pool_(IndexedSet::full(p.n)) {}

  MakerMove next(const MakerView& view, RandomSource& rng) {
    for (;;) {
      if (current_ < 0) {
        if (pool_.empty()) return MakerMove::done();
        if (choices_ % p_.mindeg_large_phase_len == 0) phase_start_ = view.round();
        current_ = pool_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(pool_.size()))));
        ++choices_;
      }
      if (view.degree(current_) >= p_.k) {
        pool_.erase(current_);
        current_ = -1;
        continue;
      }
      if (view.round() - phase_start_ + 1 > p_.mindeg_large_phase_rounds) return MakerMove::forfeit();
      const auto w = IncidentCandidates(view.knowledge(), current_, p_.sampling).draw(rng);
      if (!w) return MakerMove::forfeit();
      return MakerMove::attempt({current_, *w});
    }
  }

  void on_outcome(const MakerView&, Edge, MoveOutcome) {}

  const Certificate* certificate() const noexcept { return nullptr; }

  /// Vertices not yet pushed to degree k (V_0).
  const IndexedSet& remaining() const noexcept { return pool_; }
  std::int64_t choices() const noexcept { return choices_; }
  int current() const noexcept { return current_; }

  void encode(StateKey& key) const {
    encode_set(key, pool_, p_.n);
    key.push_back(static_cast<std::uint64_t>(current_ + 1));
    key.push_back(static_cast<std::uint64_t>(choices_ % p_.mindeg_large_phase_len));
    key.push_back(static_cast<std::uint64_t>(phase_start_));
  }

 private:
  StrategyParams p_;
  IndexedSet pool_;
  int current_ = -1;
  std::int64_t choices_ = 0;
  std::int64_t phase_start_ = 1;
};

/// Mindegree-k strategy for b <= 2a/k, driven by the weight process omega.
///
/// Stage I, while |V_<k| > n / ln n: pick distinct v, w from V_<k and try vw.
/// On failure repair v and then w up to degree k with uniform incident
/// attempts. Either way omega(v) and omega(w) grow by exactly one. More than
/// ln^10 n repair attempts in total forfeits.
///
/// Stage II: pick v from V_<k, push it to degree k, drop it. Forfeits if the
/// stage runs longer than ceil(eps n) rounds, eps = (10a)^-2.
class MindegSmallMaker {
 public:
  explicit MindegSmallMaker(const StrategyParams& p)
      : p_(p), omega_(p.n, 0), below_(IndexedSet::full(p.n)) {}

  MakerMove next(const MakerView& view, RandomSource& rng) {
    for (;;) {
      switch (phase_) {
        case Phase::Pick: {
          if (repair_attempts_ > p_.mindeg_small_repair_cap) return MakerMove::forfeit();
          if (static_cast<double>(below_.size()) <= p_.mindeg_small_stage1_size || below_.size() < 2) {
            phase_ = Phase::StageTwo;
            stage2_start_ = view.round();
            continue;
          }
          std::tie(v_, w_) = pick_two(below_, rng);
          const Edge e{v_, w_};
          if (skip_known(view, e, p_.sampling)) {
            // A pair Maker already knows is unavailable counts as a failed try.
            start_repair();
            continue;
          }
          phase_ = Phase::AwaitPair;
          return MakerMove::attempt(e);
        }
        case Phase::AwaitPair:
          throw ContractError("mindeg-small asked to move before its pair attempt resolved");
        case Phase::Repair: {
          const int target = repair_index_ == 0 ? v_ : w_;
          if (view.degree(target) >= p_.k) {
            if (++repair_index_ == 2) {
              finish_iteration(view);
            }
            continue;
          }
          const auto other = IncidentCandidates(view.knowledge(), target, p_.sampling).draw(rng);
          if (!other) return MakerMove::forfeit();
          ++repair_attempts_;
          return MakerMove::attempt({target, *other});
        }
        case Phase::StageTwo: {
          if (current_ < 0) {
            if (below_.empty()) return MakerMove::done();
            current_ = below_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(below_.size()))));
          }
          if (view.degree(current_) >= p_.k) {
            below_.erase(current_);
            current_ = -1;
            continue;
          }
          if (view.round() - stage2_start_ + 1 > p_.mindeg_small_stage2_rounds) return MakerMove::forfeit();
          const auto other = IncidentCandidates(view.knowledge(), current_, p_.sampling).draw(rng);
          if (!other) return MakerMove::forfeit();
          return MakerMove::attempt({current_, *other});
        }
      }
    }
  }

  void on_outcome(const MakerView& view, Edge, MoveOutcome out) {
    if (phase_ != Phase::AwaitPair) return;
    if (out == MoveOutcome::Claimed)
      finish_iteration(view);
    else
      start_repair();
  }

  const Certificate* certificate() const noexcept { return nullptr; }

  int omega(int v) const noexcept { return omega_[v]; }
  const IndexedSet& below_k() const noexcept { return below_; }
  bool in_stage_two() const noexcept { return phase_ == Phase::StageTwo; }
  std::int64_t repair_attempts() const noexcept { return repair_attempts_; }

  void encode(StateKey& key) const {
    for (int w : omega_) key.push_back(static_cast<std::uint64_t>(w));
    encode_set(key, below_, p_.n);
    key.push_back(static_cast<std::uint64_t>(phase_));
    key.push_back(static_cast<std::uint64_t>(v_ + 1));
    key.push_back(static_cast<std::uint64_t>(w_ + 1));
    key.push_back(static_cast<std::uint64_t>(repair_index_));
    key.push_back(static_cast<std::uint64_t>(repair_attempts_));
    key.push_back(static_cast<std::uint64_t>(stage2_start_));
    key.push_back(static_cast<std::uint64_t>(current_ + 1));
  }

 private:
  enum class Phase : std::uint8_t { Pick, AwaitPair, Repair, StageTwo };

  void start_repair() {
    phase_ = Phase::Repair;
    repair_index_ = 0;
  }

  void finish_iteration(const MakerView& view) {
    for (int x : {v_, w_}) {
      ++omega_[x];
      if (omega_[x] >= p_.k) below_.erase(x);
      // omega never overtakes Maker's degree during Stage I.
      if (view.degree(x) < omega_[x]) throw ContractError("mindeg-small: d_M(v) < omega(v)");
    }
    phase_ = Phase::Pick;
  }

  StrategyParams p_;
  std::vector<int> omega_;
  IndexedSet below_;
  Phase phase_ = Phase::Pick;
  int v_ = -1, w_ = -1;
  int repair_index_ = 0;
  std::int64_t repair_attempts_ = 0;
  std::int64_t stage2_start_ = 0;
  int current_ = -1;
};

/// Baseline: attempt a uniform edge among those Maker does not know to be
/// taken. Forfeits when no such edge is left.
class RandomMaker {
 public:
  explicit RandomMaker(const StrategyParams& p) : p_(p) {}

  MakerMove next(const MakerView& view, RandomSource& rng) {
    const auto& know = view.knowledge();
    if (p_.sampling == Sampling::Strict) {
      // Own edges are the only exclusion; revealed Breaker edges stay eligible.
      const std::int64_t eligible = view.n() * static_cast<std::int64_t>(view.n() - 1) / 2 - know.edge_count();
      if (eligible == 0) return MakerMove::forfeit();
      std::int64_t r = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(eligible)));
      for (int u = 0; u < view.n(); ++u) {
        const auto row = know.mine().row(u);
        const int c = count_bits(view.n(), u + 1, [&](int i) { return ~row[i]; });
        if (r < c) return MakerMove::attempt({u, select_bit(view.n(), u + 1, static_cast<int>(r), [&](int i) { return ~row[i]; })});
        r -= c;
      }
      return MakerMove::forfeit();
    }
    const std::int64_t unknown = know.unknown_count();
    if (unknown == 0) return MakerMove::forfeit();
    return MakerMove::attempt(know.unknown_edge(static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(unknown)))));
  }

  void on_outcome(const MakerView&, Edge, MoveOutcome) {}
  const Certificate* certificate() const noexcept { return nullptr; }
  void encode(StateKey&) const {}

 private:
  StrategyParams p_;
};

}  // namespace phantom
