#pragma once

#include <cstdint>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/strategy_common.hpp"

namespace phantom {

enum class PmVariant : std::uint8_t { LargeB, SmallB };

/// Perfect-matching strategy. Keeps a partner map over V_M and the unmatched
/// pool V_0.
///
/// Stage I runs a fixed number of steps. A step draws x1, x2 from V_0 and
/// tries x1x2. If that fails, each x_i is repaired separately: draw y, try
/// y x_i; a y in V_0 is matched directly, a matched y hands its old partner
/// y' to a fresh z in V_0 through the edge y'z.
///
/// Stage II steps build 5-edge augmenting paths through two families of
/// matched pairs.
///
/// LargeB forfeits when one step needs more than 8 ln n y-draws. SmallB
/// instead forfeits once Stage I has made more than 0.5 n^0.7 repair edge
/// choices overall. Both give up after `round_cap` rounds.
class PerfectMatchingMaker {
 public:
  PerfectMatchingMaker(const StrategyParams& p, PmVariant variant)
      : PerfectMatchingMaker(p, variant, p.pm_round_cap) {}

  /// With `spare` >= 0 the matching covers every vertex except `spare`,
  /// which is never drawn; this is how odd n is handled when the matching is
  /// only a first stage.
  PerfectMatchingMaker(const StrategyParams& p, PmVariant variant, std::int64_t round_cap, int spare = -1)
      : p_(p),
        variant_(variant),
        round_cap_(round_cap),
        partner_(p.n, -1),
        unmatched_(IndexedSet::full(p.n)),
        matched_(p.n),
        spare_(spare),
        spare_set_(p.n) {
    if ((p.n - (spare >= 0 ? 1 : 0)) % 2 != 0)
      throw DomainError("perfect matching strategy needs an even vertex count");
    if (spare >= 0) {
      unmatched_.erase(spare);
      spare_set_.set(spare);
    }
  }

  MakerMove next(const MakerView& view, RandomSource& rng) {
    for (;;) {
      if (unmatched_.empty()) {
        finish();
        return MakerMove::done();
      }
      if (view.round() > round_cap_) return MakerMove::forfeit();
      switch (phase_) {
        case Phase::Pick: {
          if (steps_ >= p_.pm_stage1_steps) {
            phase_ = Phase::StageTwoPick;
            continue;
          }
          std::tie(x_[0], x_[1]) = pick_two(unmatched_, rng);
          y_draws_ = 0;
          const Edge e{x_[0], x_[1]};
          if (view.owns(e)) {
            match(x_[0], x_[1]);
            ++steps_;
            continue;
          }
          if (skip_known(view, e, p_.sampling)) {
            begin_repair();
            continue;
          }
          phase_ = Phase::AwaitPair;
          return MakerMove::attempt(e);
        }
        case Phase::Repair: {
          while (side_ < 2 && !unmatched_.contains(x_[side_])) ++side_;
          if (side_ == 2) {
            ++steps_;
            phase_ = Phase::Pick;
            continue;
          }
          if (variant_ == PmVariant::LargeB && y_draws_ >= p_.pm_y_draw_cap) return MakerMove::forfeit();
          if (variant_ == PmVariant::SmallB && repair_choices_ >= p_.pm_small_choice_cap) return MakerMove::forfeit();
          const auto y =
              IncidentCandidates(view.knowledge(), x_[side_], p_.sampling, spare_ >= 0 ? &spare_set_ : nullptr).draw(rng);
          if (!y) return MakerMove::forfeit();
          ++y_draws_;
          ++repair_choices_;
          y_ = *y;
          phase_ = Phase::AwaitY;
          return MakerMove::attempt({x_[side_], y_});
        }
        case Phase::NeedZ: {
          const int xi = x_[side_];
          const int yp = partner_[y_];
          const int pool = unmatched_.size() - 1;
          if (pool == 0) return MakerMove::forfeit();
          int idx = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(pool)));
          if (unmatched_.at(idx) == xi) idx = pool;  // skip x_i by remapping to the last slot
          z_ = unmatched_.at(idx);
          const Edge e{yp, z_};
          if (view.owns(e)) {
            rematch(xi);
            phase_ = Phase::Repair;
            continue;
          }
          if (skip_known(view, e, p_.sampling)) {
            phase_ = Phase::Repair;
            continue;
          }
          if (variant_ == PmVariant::SmallB && repair_choices_ >= p_.pm_small_choice_cap) return MakerMove::forfeit();
          ++repair_choices_;
          phase_ = Phase::AwaitZ;
          return MakerMove::attempt(e);
        }
        case Phase::StageTwoPick: {
          std::tie(x_[0], x_[1]) = pick_two(unmatched_, rng);
          pool_ = IndexedSet(p_.n);
          for (int v = 0; v < p_.n; ++v)
            if (matched_.test(v)) pool_.insert(v);
          for (auto& side : pairs_) side.clear();
          for (auto& side : star_ok_) side.clear();
          drawn_ = 0;
          joins_ = 0;
          phase_ = Phase::StageTwoStar;
          continue;
        }
        case Phase::StageTwoStar: {
          if (drawn_ >= 2 * p_.pm_pairs_per_side || pool_.empty()) {
            phase_ = Phase::StageTwoJoin;
            continue;
          }
          const int side = static_cast<int>(drawn_ % 2);
          const int s = pool_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(pool_.size()))));
          const int t = partner_[s];
          pool_.erase(s);
          pool_.erase(t);
          pairs_[side].push_back({s, t});
          const Edge e{x_[side], s};
          if (view.owns(e) || skip_known(view, e, p_.sampling)) {
            if (view.owns(e)) star_ok_[side].push_back(static_cast<int>(pairs_[side].size()) - 1);
            ++drawn_;
            continue;
          }
          phase_ = Phase::AwaitStar;
          return MakerMove::attempt(e);
        }
        case Phase::StageTwoJoin: {
          if (star_ok_[0].empty() || star_ok_[1].empty()) return MakerMove::forfeit();
          if (joins_ >= p_.pm_join_draws) return MakerMove::forfeit();
          ++joins_;
          const auto n0 = static_cast<std::uint64_t>(star_ok_[0].size());
          const auto n1 = static_cast<std::uint64_t>(star_ok_[1].size());
          join_[0] = star_ok_[0][rng.uniform_index(n0)];
          join_[1] = star_ok_[1][rng.uniform_index(n1)];
          const Edge e{pairs_[0][join_[0]].second, pairs_[1][join_[1]].second};
          if (view.owns(e)) {
            augment();
            continue;
          }
          if (skip_known(view, e, p_.sampling)) continue;
          phase_ = Phase::AwaitJoin;
          return MakerMove::attempt(e);
        }
        case Phase::AwaitPair:
        case Phase::AwaitY:
        case Phase::AwaitZ:
        case Phase::AwaitStar:
        case Phase::AwaitJoin:
          throw ContractError("perfect matching strategy asked to move before its attempt resolved");
      }
    }
  }

  void on_outcome(const MakerView&, Edge, MoveOutcome out) {
    const bool ok = out == MoveOutcome::Claimed;
    switch (phase_) {
      case Phase::AwaitPair:
        if (ok) {
          match(x_[0], x_[1]);
          ++steps_;
          phase_ = Phase::Pick;
        } else {
          begin_repair();
        }
        break;
      case Phase::AwaitY:
        if (!ok) {
          phase_ = Phase::Repair;
        } else if (unmatched_.contains(y_)) {
          match(x_[side_], y_);
          phase_ = Phase::Repair;
        } else {
          phase_ = Phase::NeedZ;
        }
        break;
      case Phase::AwaitZ:
        if (ok) rematch(x_[side_]);
        phase_ = Phase::Repair;
        break;
      case Phase::AwaitStar: {
        const int side = static_cast<int>(drawn_ % 2);
        if (ok) star_ok_[side].push_back(static_cast<int>(pairs_[side].size()) - 1);
        ++drawn_;
        phase_ = Phase::StageTwoStar;
        break;
      }
      case Phase::AwaitJoin:
        if (ok) augment();
        else phase_ = Phase::StageTwoJoin;
        break;
      default:
        break;
    }
    if (unmatched_.empty()) finish();
  }

  const Certificate* certificate() const noexcept { return complete_ ? &cert_ : nullptr; }

  bool complete() const noexcept { return unmatched_.empty(); }
  int partner(int v) const noexcept { return partner_[v]; }
  const IndexedSet& unmatched() const noexcept { return unmatched_; }
  std::int64_t steps() const noexcept { return steps_; }
  bool in_stage_two() const noexcept { return phase_ >= Phase::StageTwoPick; }
  std::int64_t repair_choices() const noexcept { return repair_choices_; }

  void encode(StateKey& key) const {
    for (int v : partner_) key.push_back(static_cast<std::uint64_t>(v + 1));
    key.push_back(static_cast<std::uint64_t>(phase_));
    key.push_back(static_cast<std::uint64_t>(steps_));
    key.push_back(static_cast<std::uint64_t>(x_[0] + 1));
    key.push_back(static_cast<std::uint64_t>(x_[1] + 1));
    key.push_back(static_cast<std::uint64_t>(side_));
    key.push_back(static_cast<std::uint64_t>(y_ + 1));
    key.push_back(static_cast<std::uint64_t>(z_ + 1));
    key.push_back(static_cast<std::uint64_t>(y_draws_));
    key.push_back(static_cast<std::uint64_t>(repair_choices_));
    if (phase_ >= Phase::StageTwoPick) {
      key.push_back(static_cast<std::uint64_t>(drawn_));
      key.push_back(static_cast<std::uint64_t>(joins_));
      for (int side = 0; side < 2; ++side) {
        key.push_back(pairs_[side].size());
        for (auto [s, t] : pairs_[side]) key.push_back(static_cast<std::uint64_t>(s) << 32 | static_cast<std::uint32_t>(t));
        key.push_back(star_ok_[side].size());
        for (int j : star_ok_[side]) key.push_back(static_cast<std::uint64_t>(j));
      }
      encode_set(key, pool_, p_.n);
    }
  }

 private:
  enum class Phase : std::uint8_t {
    Pick,
    AwaitPair,
    Repair,
    AwaitY,
    NeedZ,
    AwaitZ,
    StageTwoPick,
    StageTwoStar,
    AwaitStar,
    StageTwoJoin,
    AwaitJoin,
  };

  void begin_repair() {
    side_ = 0;
    phase_ = Phase::Repair;
  }

  void match(int u, int v) {
    partner_[u] = v;
    partner_[v] = u;
    for (int w : {u, v}) {
      unmatched_.erase(w);
      matched_.set(w);
    }
  }

  // y is re-matched to x_i and its old partner y' to z.
  void rematch(int xi) {
    const int yp = partner_[y_];
    match(y_, xi);
    match(yp, z_);
  }

  void augment() {
    const auto [s1, t1] = pairs_[0][join_[0]];
    const auto [s2, t2] = pairs_[1][join_[1]];
    match(x_[0], s1);
    match(t1, t2);
    match(s2, x_[1]);
    phase_ = Phase::StageTwoPick;
  }

  void finish() {
    if (complete_) return;
    complete_ = true;
    cert_.kind = Certificate::Kind::Matching;
    cert_.data = partner_;
  }

  StrategyParams p_;
  PmVariant variant_;
  std::int64_t round_cap_;
  std::vector<int> partner_;
  IndexedSet unmatched_;
  VertexSet matched_;
  int spare_ = -1;
  VertexSet spare_set_;
  Phase phase_ = Phase::Pick;
  std::int64_t steps_ = 0;
  int x_[2] = {-1, -1};
  int side_ = 0;
  int y_ = -1, z_ = -1;
  std::int64_t y_draws_ = 0;
  std::int64_t repair_choices_ = 0;

  IndexedSet pool_;
  std::vector<std::pair<int, int>> pairs_[2];
  std::vector<int> star_ok_[2];
  std::int64_t drawn_ = 0;
  std::int64_t joins_ = 0;
  int join_[2] = {0, 0};

  bool complete_ = false;
  Certificate cert_;
};

}  // namespace phantom
