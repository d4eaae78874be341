#pragma once

#include <cstdint>
#include <optional>

#include "phantom/components.hpp"
#include "phantom/errors.hpp"
#include "phantom/maker_pm.hpp"
#include "phantom/strategy_common.hpp"

namespace phantom {

/// Connectivity strategy for b > 2a. Repeats a two-move sequence n - 1
/// times: draw a vertex v not yet drawn in the current stage, then try up to
/// n^0.2 uniform edges leaving v's component until one is claimed. Stages
/// hold ceil(eps (n-1)) sequences each. Every claim joins two components, so
/// Maker's graph stays a forest.
class ConnLargeMaker {
 public:
  explicit ConnLargeMaker(const StrategyParams& p)
      : p_(p), comps_(p.n, true), pool_(IndexedSet::full(p.n)) {}

  MakerMove next(const MakerView& view, RandomSource& rng) {
    if (successes_ >= p_.n - 1) return MakerMove::done();
    if (view.round() > p_.conn_large_round_cap) return MakerMove::forfeit();
    if (v_ < 0) {
      if (successes_ % p_.conn_large_stage_len == 0 && !stage_fresh_) {
        pool_ = IndexedSet::full(p_.n);
        stage_fresh_ = true;
      }
      v_ = pool_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(pool_.size()))));
      pool_.erase(v_);
      tries_ = 0;
    }
    if (tries_ >= p_.conn_large_edge_choices) return MakerMove::forfeit();
    const auto e = CrossEdges(view.knowledge(), comps_.members(v_), comps_.component_size(v_), p_.sampling).draw(rng);
    if (!e) return MakerMove::forfeit();
    ++tries_;
    return MakerMove::attempt(*e);
  }

  void on_outcome(const MakerView&, Edge e, MoveOutcome out) {
    if (out != MoveOutcome::Claimed) return;
    if (!comps_.unite(e.u, e.v)) throw ContractError("conn-large claimed an edge inside one component");
    ++successes_;
    stage_fresh_ = false;
    v_ = -1;
  }

  const Certificate* certificate() const noexcept { return nullptr; }

  const ComponentIndex& components() const noexcept { return comps_; }
  std::int64_t sequences_done() const noexcept { return successes_; }

  void encode(StateKey& key) const {
    comps_.encode(key);
    encode_set(key, pool_, p_.n);
    key.push_back(static_cast<std::uint64_t>(v_ + 1));
    key.push_back(static_cast<std::uint64_t>(tries_));
    key.push_back(static_cast<std::uint64_t>(successes_));
    key.push_back(stage_fresh_ ? 1 : 0);
  }

 private:
  StrategyParams p_;
  ComponentIndex comps_;
  IndexedSet pool_;
  int v_ = -1;
  std::int64_t tries_ = 0;
  std::int64_t successes_ = 0;
  bool stage_fresh_ = true;
};

/// Connectivity strategy for b <= 2a.
///
/// Stage I builds a perfect matching with the small-bias matching strategy
/// (round cap n/(2a) + n^0.9); for odd n vertex n-1 is left out of it.
/// Stage II merges size-2 components: pairs of them through one of their
/// cross edges while there are at least n^(2/3), then one at a time into the
/// rest of the graph. A failed try sends each
/// involved component through a repair loop that draws outgoing edges until
/// one is claimed. Stage III picks a uniform component and grows it the same
/// way until Maker's graph is connected. Stages II and III each get
/// ceil(1.1 n / (4a)) rounds.
class ConnSmallMaker {
 public:
  explicit ConnSmallMaker(const StrategyParams& p)
      : p_(p), matching_(p, PmVariant::SmallB, p.conn_small_stage1_rounds, p.n % 2 ? p.n - 1 : -1), comps_(p.n, true), size2_(p.n) {}

  MakerMove next(const MakerView& view, RandomSource& rng) {
    for (;;) {
      switch (stage_) {
        case Stage::Matching: {
          if (!matching_.complete()) {
            const MakerMove m = matching_.next(view, rng);
            if (m.kind != MakerMove::Kind::Done) return m;
          }
          stage_ = Stage::Pairs;
          stage_start_ = view.round();
          continue;
        }
        case Stage::Pairs: {
          if (comps_.connected()) return MakerMove::done();
          if (view.round() - stage_start_ + 1 > p_.conn_small_stage_rounds) return MakerMove::forfeit();
          if (repair_pos_ < repair_end_) {
            const int anchor = repair_[repair_pos_];
            // C2 may already have been absorbed while repairing C1.
            if (repair_pos_ == 1 && comps_.same(anchor, repair_[0])) {
              repair_pos_ = repair_end_;
              continue;
            }
            const auto e = cross(view, anchor, rng);
            if (!e) return MakerMove::forfeit();
            pending_ = Pending::Repair;
            return MakerMove::attempt(*e);
          }
          if (size2_.empty()) {
            stage_ = Stage::Merge;
            stage_start_ = view.round();
            continue;
          }
          if (static_cast<double>(size2_.size()) >= p_.conn_small_size2_threshold && size2_.size() >= 2) {
            const auto [r1, r2] = pick_two(size2_, rng);
            const auto c1 = pair_of(r1), c2 = pair_of(r2);
            Edge options[4];
            int usable = 0;
            for (int p : {c1.first, c1.second})
              for (int q : {c2.first, c2.second})
                if (!skip_known(view, Edge{p, q}, p_.sampling)) options[usable++] = Edge{p, q};
            repair_[0] = c1.first;
            repair_[1] = c2.first;
            if (usable == 0) {
              start_repair(2);
              continue;
            }
            pending_ = Pending::PairOfPairs;
            return MakerMove::attempt(options[rng.uniform_index(static_cast<std::uint64_t>(usable))]);
          }
          const int r = size2_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(size2_.size()))));
          repair_[0] = r;
          const auto e = cross(view, r, rng);
          if (!e) return MakerMove::forfeit();
          pending_ = Pending::Single;
          return MakerMove::attempt(*e);
        }
        case Stage::Merge: {
          if (comps_.connected()) return MakerMove::done();
          if (view.round() - stage_start_ + 1 > p_.conn_small_stage_rounds) return MakerMove::forfeit();
          if (target_ < 0) {
            const auto& roots = comps_.roots();
            target_ = roots.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(roots.size()))));
          }
          const auto e = cross(view, target_, rng);
          if (!e) return MakerMove::forfeit();
          pending_ = Pending::Grow;
          return MakerMove::attempt(*e);
        }
      }
    }
  }

  void on_outcome(const MakerView& view, Edge e, MoveOutcome out) {
    const bool ok = out == MoveOutcome::Claimed;
    if (stage_ == Stage::Matching) {
      matching_.on_outcome(view, e, out);
      if (ok) unite(e);
      return;
    }
    if (ok) unite(e);
    switch (pending_) {
      case Pending::PairOfPairs:
        if (!ok) start_repair(2);
        break;
      case Pending::Single:
        if (!ok) start_repair(1);
        break;
      case Pending::Repair:
        if (ok) ++repair_pos_;
        break;
      case Pending::Grow:
        if (ok) target_ = -1;
        break;
      case Pending::None:
        break;
    }
    pending_ = Pending::None;
  }

  const Certificate* certificate() const noexcept { return nullptr; }

  const ComponentIndex& components() const noexcept { return comps_; }
  const PerfectMatchingMaker& matching() const noexcept { return matching_; }
  int stage() const noexcept { return static_cast<int>(stage_) + 1; }
  int size2_components() const noexcept { return size2_.size(); }

  void encode(StateKey& key) const {
    key.push_back(static_cast<std::uint64_t>(stage_));
    if (stage_ == Stage::Matching) matching_.encode(key);
    comps_.encode(key);
    key.push_back(static_cast<std::uint64_t>(stage_start_));
    key.push_back(static_cast<std::uint64_t>(repair_pos_));
    key.push_back(static_cast<std::uint64_t>(repair_end_));
    key.push_back(static_cast<std::uint64_t>(repair_[0] + 1));
    key.push_back(static_cast<std::uint64_t>(repair_[1] + 1));
    key.push_back(static_cast<std::uint64_t>(target_ < 0 ? 0 : comps_.representative(target_) + 1));
    key.push_back(static_cast<std::uint64_t>(pending_));
  }

 private:
  enum class Stage : std::uint8_t { Matching, Pairs, Merge };
  enum class Pending : std::uint8_t { None, PairOfPairs, Single, Repair, Grow };

  void start_repair(int count) {
    repair_pos_ = 0;
    repair_end_ = count;
  }

  std::optional<Edge> cross(const MakerView& view, int v, RandomSource& rng) const {
    return CrossEdges(view.knowledge(), comps_.members(v), comps_.component_size(v), p_.sampling).draw(rng);
  }

  std::pair<int, int> pair_of(int v) const {
    const auto& m = comps_.members(v);
    const int first = select_bit(p_.n, 0, 0, [&](int i) { return m.words()[i]; });
    const int second = select_bit(p_.n, 0, 1, [&](int i) { return m.words()[i]; });
    return {first, second};
  }

  void unite(Edge e) {
    const int ru = comps_.find(e.u), rv = comps_.find(e.v);
    if (ru == rv) return;
    size2_.erase(ru);
    size2_.erase(rv);
    comps_.unite(e.u, e.v);
    const int r = comps_.find(e.u);
    if (comps_.component_size(r) == 2) size2_.insert(r);
  }

  StrategyParams p_;
  PerfectMatchingMaker matching_;
  ComponentIndex comps_;
  IndexedSet size2_;  ///< internal roots of size-2 components
  Stage stage_ = Stage::Matching;
  std::int64_t stage_start_ = 0;
  int repair_[2] = {-1, -1};
  int repair_pos_ = 0, repair_end_ = 0;
  int target_ = -1;
  Pending pending_ = Pending::None;
};

}  // namespace phantom
