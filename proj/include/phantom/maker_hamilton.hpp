#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <variant>
#include <vector>

#include "phantom/errors.hpp"
#include "phantom/strategy_common.hpp"

namespace phantom {

enum class SurgeryCase : std::uint8_t { BothOutside, BothOnPath, XOnPath, YOnPath };

/// A path rewrite that absorbs x once `edge` is claimed.
struct SurgeryPlan {
  SurgeryCase kind;
  Edge edge;
  std::vector<int> order;  ///< new path, starting at x and ending at the old last vertex
};

struct Degenerate {
  enum class Reason : std::uint8_t { OutOfRange, AlreadyOwned };
  Reason reason;
};

using SurgeryResult = std::variant<SurgeryPlan, Degenerate>;

/// Rewrites P = (v_1, ..., v_m), v_1 = y, so that it also covers x (and x',
/// y' when they lie off the path), using the star edges xx' and yy' plus one
/// new edge. `owns(Edge)` reports Maker's edges.
template <class Owns>
SurgeryResult path_surgery(std::span<const int> path, int x, int xp, int yp, Owns&& owns) {
  const int m = static_cast<int>(path.size());
  if (m < 1) throw ContractError("path_surgery on an empty path");
  const int y = path[0];
  if (x == y || xp == x || yp == y || xp == yp || xp == y || yp == x)
    throw ContractError("path_surgery endpoints overlap");
  int i = 0, j = 0;  // 1-based positions, 0 when off the path
  for (int p = 0; p < m; ++p) {
    if (path[p] == x) throw ContractError("path_surgery: x already on the path");
    if (path[p] == xp) i = p + 1;
    if (path[p] == yp) j = p + 1;
  }
  if (!owns(Edge{x, xp}) || !owns(Edge{y, yp})) throw ContractError("path_surgery needs both star edges");

  auto v = [&](int idx) { return path[idx - 1]; };
  auto append = [&](std::vector<int>& out, int from, int to) {
    if (from <= to)
      for (int t = from; t <= to; ++t) out.push_back(v(t));
    else
      for (int t = from; t >= to; --t) out.push_back(v(t));
  };

  SurgeryPlan plan{};
  plan.order.reserve(static_cast<std::size_t>(m) + 3);
  plan.order.push_back(x);
  if (i == 0 && j == 0) {
    plan.kind = SurgeryCase::BothOutside;
    plan.edge = Edge{xp, yp};
    plan.order.push_back(xp);
    plan.order.push_back(yp);
    append(plan.order, 1, m);
  } else if (i != 0 && j != 0) {
    plan.kind = SurgeryCase::BothOnPath;
    if (i < j) {
      if (j == m) return Degenerate{Degenerate::Reason::OutOfRange};
      plan.edge = Edge{v(i - 1), v(j + 1)};
      append(plan.order, i, j);
      append(plan.order, 1, i - 1);
      append(plan.order, j + 1, m);
    } else {
      if (i == m) return Degenerate{Degenerate::Reason::OutOfRange};
      plan.edge = Edge{v(j - 1), v(i + 1)};
      append(plan.order, i, j);
      append(plan.order, 1, j - 1);
      append(plan.order, i + 1, m);
    }
  } else if (i != 0) {
    plan.kind = SurgeryCase::XOnPath;
    if (i == m) return Degenerate{Degenerate::Reason::OutOfRange};
    plan.edge = Edge{v(i + 1), yp};
    append(plan.order, i, 1);
    plan.order.push_back(yp);
    append(plan.order, i + 1, m);
  } else {
    plan.kind = SurgeryCase::YOnPath;
    if (j == 1) return Degenerate{Degenerate::Reason::OutOfRange};
    plan.edge = Edge{xp, v(j - 1)};
    plan.order.push_back(xp);
    append(plan.order, j - 1, 1);
    append(plan.order, j, m);
  }
  if (owns(plan.edge)) return Degenerate{Degenerate::Reason::AlreadyOwned};
  return plan;
}

/// Hamiltonicity strategy. Stage I grows a path one vertex at a time: a
/// uniform x outside the path is joined to the endpoint y that was not added
/// last. If xy fails, Maker builds random stars at x and y and tries surgery
/// pairs (x', y') until one rewrite succeeds or 2 ln n tries in a row fail.
/// Stage II removes the last-added endpoint from the Hamilton path and
/// re-inserts it the same way, which closes a Hamilton cycle.
class HamiltonMaker {
 public:
  explicit HamiltonMaker(const StrategyParams& p)
      : p_(p), on_path_(p.n), outside_(IndexedSet::full(p.n)), star_block_(p.n) {
    if (p.n < 3) throw DomainError("Hamiltonicity needs at least 3 vertices");
  }

  MakerMove next(const MakerView& view, RandomSource& rng) {
    for (;;) {
      if (phase_ == Phase::Finished) return MakerMove::done();
      if (view.round() > p_.ham_round_cap) return MakerMove::forfeit();
      switch (phase_) {
        case Phase::Start: {
          // Lexicographic first edge Maker does not already know about.
          for (;;) {
            if (start_u_ >= p_.n - 1) return MakerMove::forfeit();
            const Edge e{start_u_, start_v_};
            if (!view.known_unavailable(e)) {
              phase_ = Phase::AwaitStart;
              return MakerMove::attempt(e);
            }
            advance_start();
          }
        }
        case Phase::Pick: {
          if (outside_.empty()) {
            if (closing_) throw ContractError("hamilton: closing step already taken");
            closing_ = true;
            x_ = y_front_ ? path_.back() : path_.front();
            if (y_front_) path_.pop_back();
            else path_.pop_front();
            on_path_.reset(x_);
          } else {
            x_ = outside_.at(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(outside_.size()))));
          }
          y_ = y_front_ ? path_.front() : path_.back();
          const Edge e{x_, y_};
          if (view.owns(e)) {
            extend_direct();
            continue;
          }
          if (skip_known(view, e, p_.sampling)) {
            begin_repair();
            continue;
          }
          phase_ = Phase::AwaitDirect;
          return MakerMove::attempt(e);
        }
        case Phase::StarX:
        case Phase::StarY: {
          const bool at_x = phase_ == Phase::StarX;
          if (star_drawn_ >= p_.ham_star_size) {
            if (at_x) {
              phase_ = Phase::StarY;
              star_drawn_ = 0;
              continue;
            }
            if (good_x_.empty() || good_y_.empty()) return MakerMove::forfeit();
            begin_pairs();
            continue;
          }
          const int center = at_x ? x_ : y_;
          const auto w = IncidentCandidates(view.knowledge(), center, p_.sampling, &star_block_).draw(rng);
          if (!w) {
            star_drawn_ = p_.ham_star_size;
            continue;
          }
          star_block_.set(*w);
          ++star_drawn_;
          star_w_ = *w;
          phase_ = at_x ? Phase::AwaitStarX : Phase::AwaitStarY;
          return MakerMove::attempt({center, *w});
        }
        case Phase::Pairs: {
          if (pair_failures_ >= p_.ham_pair_attempts || pair_pool_.empty()) return MakerMove::forfeit();
          const auto idx = rng.uniform_index(pair_pool_.size());
          const int code = pair_pool_[idx];
          pair_pool_[idx] = pair_pool_.back();
          pair_pool_.pop_back();
          const int xp = good_x_[code / static_cast<int>(good_y_.size())];
          const int yp = good_y_[code % static_cast<int>(good_y_.size())];
          auto result = path_surgery(oriented_, x_, xp, yp, [&](Edge e) { return view.owns(e); });
          if (std::holds_alternative<Degenerate>(result)) continue;
          plan_ = std::move(std::get<SurgeryPlan>(result));
          if (skip_known(view, plan_.edge, p_.sampling)) {
            ++pair_failures_;
            continue;
          }
          phase_ = Phase::AwaitPair;
          return MakerMove::attempt(plan_.edge);
        }
        default:
          throw ContractError("hamilton strategy asked to move before its attempt resolved");
      }
    }
  }

  void on_outcome(const MakerView&, Edge e, MoveOutcome out) {
    const bool ok = out == MoveOutcome::Claimed;
    switch (phase_) {
      case Phase::AwaitStart:
        if (ok) {
          path_ = {e.u, e.v};
          y_front_ = true;
          for (int w : {e.u, e.v}) {
            on_path_.set(w);
            outside_.erase(w);
          }
          phase_ = Phase::Pick;
        } else {
          advance_start();
          phase_ = Phase::Start;
        }
        break;
      case Phase::AwaitDirect:
        if (ok) extend_direct();
        else begin_repair();
        break;
      case Phase::AwaitStarX:
        if (ok) good_x_.push_back(star_w_);
        phase_ = Phase::StarX;
        break;
      case Phase::AwaitStarY:
        if (ok) good_y_.push_back(star_w_);
        phase_ = Phase::StarY;
        break;
      case Phase::AwaitPair:
        if (ok) {
          adopt(plan_.order);
        } else {
          ++pair_failures_;
          phase_ = Phase::Pairs;
        }
        break;
      default:
        break;
    }
  }

  const Certificate* certificate() const noexcept { return phase_ == Phase::Finished ? &cert_ : nullptr; }

  /// Current path from the y endpoint to the last-added endpoint.
  std::vector<int> path() const {
    std::vector<int> out(path_.begin(), path_.end());
    if (!y_front_) std::reverse(out.begin(), out.end());
    return out;
  }
  bool closing() const noexcept { return closing_; }
  int outside_count() const noexcept { return outside_.size(); }

  void encode(StateKey& key) const {
    key.push_back(static_cast<std::uint64_t>(phase_));
    key.push_back(static_cast<std::uint64_t>(start_u_) << 32 | static_cast<std::uint32_t>(start_v_));
    key.push_back(closing_ ? 1 : 0);
    key.push_back(path_.size());
    for (int v : path()) key.push_back(static_cast<std::uint64_t>(v));
    key.push_back(static_cast<std::uint64_t>(x_ + 1));
    key.push_back(static_cast<std::uint64_t>(star_drawn_));
    for (auto w : star_block_.words()) key.push_back(w);
    key.push_back(good_x_.size());
    for (int v : good_x_) key.push_back(static_cast<std::uint64_t>(v));
    key.push_back(good_y_.size());
    for (int v : good_y_) key.push_back(static_cast<std::uint64_t>(v));
    std::vector<int> pool(pair_pool_);
    std::sort(pool.begin(), pool.end());
    key.push_back(pool.size());
    for (int c : pool) key.push_back(static_cast<std::uint64_t>(c));
    key.push_back(static_cast<std::uint64_t>(pair_failures_));
    if (phase_ == Phase::AwaitPair) {
      key.push_back(static_cast<std::uint64_t>(plan_.edge.u) << 32 | static_cast<std::uint32_t>(plan_.edge.v));
      for (int v : plan_.order) key.push_back(static_cast<std::uint64_t>(v));
    }
  }

 private:
  enum class Phase : std::uint8_t {
    Start,
    AwaitStart,
    Pick,
    AwaitDirect,
    StarX,
    AwaitStarX,
    StarY,
    AwaitStarY,
    Pairs,
    AwaitPair,
    Finished,
  };

  void advance_start() {
    if (++start_v_ >= p_.n) {
      ++start_u_;
      start_v_ = start_u_ + 1;
    }
  }

  void extend_direct() {
    if (y_front_) path_.push_front(x_);
    else path_.push_back(x_);
    y_front_ = !y_front_;
    absorb(x_);
    after_step();
  }

  void adopt(const std::vector<int>& order) {
    path_.assign(order.begin(), order.end());
    y_front_ = false;  // x leads the new order; the old far end becomes y
    for (int v : order) absorb(v);
    after_step();
  }

  void absorb(int v) {
    on_path_.set(v);
    outside_.erase(v);
  }

  void after_step() {
    if (closing_) {
      cert_.kind = Certificate::Kind::Cycle;
      cert_.data.assign(path_.begin(), path_.end());
      phase_ = Phase::Finished;
      return;
    }
    phase_ = Phase::Pick;
  }

  void begin_repair() {
    star_block_.clear();
    star_block_.set(x_);
    star_block_.set(y_);
    good_x_.clear();
    good_y_.clear();
    star_drawn_ = 0;
    phase_ = Phase::StarX;
  }

  void begin_pairs() {
    oriented_ = path();
    pair_pool_.resize(good_x_.size() * good_y_.size());
    for (std::size_t c = 0; c < pair_pool_.size(); ++c) pair_pool_[c] = static_cast<int>(c);
    pair_failures_ = 0;
    phase_ = Phase::Pairs;
  }

  StrategyParams p_;
  Phase phase_ = Phase::Start;
  int start_u_ = 0, start_v_ = 1;
  std::deque<int> path_;
  bool y_front_ = true;
  bool closing_ = false;
  VertexSet on_path_;
  IndexedSet outside_;
  int x_ = -1, y_ = -1;

  VertexSet star_block_;
  std::vector<int> good_x_, good_y_;
  std::int64_t star_drawn_ = 0;
  int star_w_ = -1;

  std::vector<int> oriented_;
  std::vector<int> pair_pool_;
  std::int64_t pair_failures_ = 0;
  SurgeryPlan plan_{};

  Certificate cert_;
};

}  // namespace phantom
