#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phantom/breaker.hpp"
#include "phantom/errors.hpp"
#include "phantom/game.hpp"
#include "phantom/random.hpp"

namespace phantom {

struct OracleOptions {
  bool memoize = true;
  /// Refuse when the rough branch estimate exceeds this.
  double max_estimate = 1e8;
  /// Hard stop on distinct positions visited.
  std::size_t max_positions = 20'000'000;
  Sampling sampling = Sampling::KnowledgeAware;
};

struct ExactResult {
  Rational probability;
  std::size_t positions = 0;  ///< positions evaluated (memo misses)
  std::size_t steps = 0;      ///< branch expansions performed
};

/// One outcome of a single atomic engine step.
struct Branch {
  Rational weight;
  Game game;
};

/// Rough size of the position space: every edge is Maker's, Breaker's or free.
inline double oracle_estimate(const GameConfig& cfg) {
  const double edges = static_cast<double>(cfg.edge_count());
  return std::pow(3.0, edges);
}

namespace detail {

inline void expand_step(const Game& g, std::vector<std::uint64_t>& prefix, const Rational& weight,
                        std::vector<Branch>& out) {
  Game child = g;
  ScriptedRandom rng(prefix);
  try {
    child.step(rng);
  } catch (const ChoiceRequired& c) {
    const Rational w = weight / Rational(c.options);
    for (std::uint64_t i = 0; i < c.options; ++i) {
      prefix.push_back(i);
      expand_step(g, prefix, w, out);
      prefix.pop_back();
    }
    return;
  }
  out.push_back({weight, std::move(child)});
}

struct KeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.size();
    for (auto w : k) h = splitmix64(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

class Evaluator {
 public:
  explicit Evaluator(const OracleOptions& opt) : opt_(opt) {}

  Rational value(const Game& g) {
    if (g.over()) return g.record().winner == Actor::Maker ? Rational(1) : Rational(0);
    StateKey key;
    if (opt_.memoize) {
      g.encode(key);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    if (++positions_ > opt_.max_positions)
      throw RefusalError("exact evaluation visited more than the position limit",
                         static_cast<double>(opt_.max_positions));
    std::vector<Branch> branches;
    std::vector<std::uint64_t> prefix;
    detail::expand_step(g, prefix, Rational(1), branches);
    steps_ += branches.size();
    Rational total = 0;
    for (const auto& b : branches) total += b.weight * value(b.game);
    if (opt_.memoize) memo_.emplace(std::move(key), total);
    return total;
  }

  std::size_t positions() const noexcept { return positions_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  OracleOptions opt_;
  std::unordered_map<StateKey, Rational, KeyHash> memo_;
  std::size_t positions_ = 0;
  std::size_t steps_ = 0;
};

}  // namespace detail

/// All outcomes of the next atomic step of `g`, with exact probabilities.
/// The options at each choice point are the ones the seeded source draws
/// from, in the same order.
inline std::vector<Branch> enumerate_step_branches(const Game& g) {
  std::vector<Branch> out;
  std::vector<std::uint64_t> prefix;
  detail::expand_step(g, prefix, Rational(1), out);
  return out;
}

/// Option count of the first choice point in the next step of `g`; 1 when the
/// step is deterministic.
inline std::uint64_t next_choice_options(const Game& g) {
  Game probe = g;
  ScriptedRandom rng({});
  try {
    probe.step(rng);
  } catch (const ChoiceRequired& c) {
    return c.options;
  }
  return 1;
}

inline ExactResult exact_win_probability_detailed(const GameConfig& cfg, std::string_view maker,
                                                  std::string_view breaker, const OracleOptions& opt = {}) {
  cfg.validate();
  const double estimate = oracle_estimate(cfg);
  if (estimate > opt.max_estimate) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", estimate);
    throw RefusalError(std::string("board too large for exact evaluation (about ") + buf + " positions)", estimate);
  }
  Game root(cfg, make_maker(maker, cfg, opt.sampling), make_breaker(breaker, cfg));
  detail::Evaluator ev(opt);
  ExactResult r;
  r.probability = ev.value(root);
  r.positions = ev.positions();
  r.steps = ev.steps();
  return r;
}

/// Exact probability that Maker wins, over every random choice of both
/// strategies.
inline Rational exact_win_probability(const GameConfig& cfg, std::string_view maker, std::string_view breaker,
                                      const OracleOptions& opt = {}) {
  return exact_win_probability_detailed(cfg, maker, breaker, opt).probability;
}

inline std::string to_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace phantom
