#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phantom/errors.hpp"
#include "phantom/strategy_common.hpp"

namespace phantom {

using Rational = boost::multiprecision::cpp_rational;

/// Upper bound on Maker's winning probability against the star-phase
/// Breaker: prod_{i=0}^{floor(b/2a)-1} 1 / (b/(2a) - i).
inline Rational star_phase_upper_bound_exact(int a, int b) {
  if (a < 1 || b < 1) throw DomainError("biases must be positive");
  if (b <= 2 * a) throw DomainError("bound needs b > 2a");
  Rational p = 1;
  for (int i = 0; i < b / (2 * a); ++i) p *= Rational(2 * a, b - 2 * a * i);
  return p;
}

inline double star_phase_upper_bound(int a, int b) { return static_cast<double>(star_phase_upper_bound_exact(a, b)); }

/// Star phases: pick a vertex Maker has never tried an edge at and claim its
/// free edges one by one. Any Maker attempt at the target ends the phase.
/// Forfeits when no untouched vertex is left at the start of a phase.
class StarPhasesBreaker {
 public:
  explicit StarPhasesBreaker(int n) : n_(n), untouched_(IndexedSet::full(n)) {}

  BreakerMove next(const BoardState& s, RandomSource& rng) {
    for (;;) {
      if (target_ < 0) {
        eligible_.clear();
        for (int v : untouched_.items())
          if (s.free_degree(v) > 0) eligible_.push_back(v);
        if (eligible_.empty()) return BreakerMove::give_up();
        target_ = eligible_[rng.uniform_index(eligible_.size())];
        ++phases_;
      }
      if (s.free_degree(target_) == 0) {
        target_ = -1;
        continue;
      }
      return BreakerMove::claim({target_, s.free_neighbor(target_, 0)});
    }
  }

  void observe_maker(const BoardState&, Edge e, MoveOutcome) {
    untouched_.erase(e.u);
    untouched_.erase(e.v);
    if (target_ >= 0 && e.contains(target_)) target_ = -1;
  }

  int target() const noexcept { return target_; }
  bool untouched(int v) const noexcept { return untouched_.contains(v); }
  std::int64_t phases() const noexcept { return phases_; }

  void encode(StateKey& key) const {
    encode_set(key, untouched_, n_);
    key.push_back(static_cast<std::uint64_t>(target_ + 1));
  }

 private:
  int n_;
  IndexedSet untouched_;
  int target_ = -1;
  std::int64_t phases_ = 0;
  std::vector<int> eligible_;
};

/// Single star: one uniformly chosen vertex v gets Breaker's edges until
/// fewer than k free edges remain there. Gives up as soon as Maker has k
/// edges at v or fails on an edge at v. After the star, claims uniform free
/// edges.
class SingleStarBreaker {
 public:
  SingleStarBreaker(int n, int k) : n_(n), k_(k) {}

  BreakerMove next(const BoardState& s, RandomSource& rng) {
    if (target_ < 0) target_ = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n_)));
    if (!star_over_) {
      if (saw_failure_ || s.maker_degree(target_) >= k_) return BreakerMove::give_up();
      if (s.free_degree(target_) >= k_) return BreakerMove::claim({target_, s.free_neighbor(target_, 0)});
      star_over_ = true;
    }
    if (s.free_count() == 0) return BreakerMove::give_up();
    return BreakerMove::claim(s.free_edge(static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(s.free_count())))));
  }

  void observe_maker(const BoardState&, Edge e, MoveOutcome out) {
    if (target_ >= 0 && out == MoveOutcome::Failure && e.contains(target_)) saw_failure_ = true;
  }

  int target() const noexcept { return target_; }
  bool star_over() const noexcept { return star_over_; }

  void encode(StateKey& key) const {
    key.push_back(static_cast<std::uint64_t>(target_ + 1));
    key.push_back((star_over_ ? 2U : 0U) | (saw_failure_ ? 1U : 0U));
  }

 private:
  int n_;
  int k_;
  int target_ = -1;
  bool star_over_ = false;
  bool saw_failure_ = false;
};

/// Baseline: uniform free edges.
class RandomBreaker {
 public:
  BreakerMove next(const BoardState& s, RandomSource& rng) {
    if (s.free_count() == 0) return BreakerMove::give_up();
    return BreakerMove::claim(s.free_edge(static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(s.free_count())))));
  }
  void observe_maker(const BoardState&, Edge, MoveOutcome) {}
  void encode(StateKey&) const {}
};

}  // namespace phantom
