#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phantom/board.hpp"
#include "phantom/components.hpp"
#include "phantom/errors.hpp"
#include "phantom/strategy.hpp"
#include "phantom/win_check.hpp"

namespace phantom {

enum class Reason : std::uint8_t { MakerWin, MakerForfeit, BreakerForfeit, BoardExhausted, StallCap };

inline constexpr std::array<std::string_view, 5> kReasonNames = {"MakerWin", "MakerForfeit", "BreakerForfeit",
                                                                 "BoardExhausted", "StallCap"};
inline std::string_view to_string(Reason r) { return kReasonNames[static_cast<int>(r)]; }
inline std::string_view to_string(Actor a) { return a == Actor::Maker ? "Maker" : "Breaker"; }

struct TrialRecord {
  Actor winner = Actor::Breaker;
  Reason reason = Reason::BoardExhausted;
  std::int64_t rounds_used = 0;
  std::int64_t maker_attempts = 0;
  std::int64_t maker_failures = 0;
  std::uint64_t seed = 0;
  /// Set when the game stopped because some vertex could no longer reach the
  /// degree a winning set needs.
  bool dead_position = false;
  /// StallCap games count as Breaker wins but are flagged here.
  bool stalled = false;
  std::optional<std::vector<Edge>> maker_edges;
  std::optional<std::vector<TranscriptEntry>> transcript;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Referee for one game. Advances in atomic steps (one Maker attempt or one
/// Breaker claim), which is what the exact oracle branches over.
class Game {
 public:
  Game(const GameConfig& cfg, Maker maker, Breaker breaker)
      : cfg_(cfg),
        state_(cfg),
        maker_(std::move(maker)),
        breaker_(std::move(breaker)),
        comps_(cfg.game == GameKind::Connectivity ? cfg.n : 0),
        target_degree_(cfg.game == GameKind::MinDegree ? cfg.k : cfg.required_degree()) {}

  bool over() const noexcept { return phase_ == Phase::Over; }
  const BoardState& state() const noexcept { return state_; }
  const Maker& maker() const noexcept { return maker_; }
  const Breaker& breaker() const noexcept { return breaker_; }

  /// Plays one atomic step. Every random choice goes through `rng`.
  void step(RandomSource& rng) {
    switch (phase_) {
      case Phase::Over:
        return;
      case Phase::MakerTurn:
        maker_step(rng);
        return;
      case Phase::BreakerTurn:
        breaker_step(rng);
        return;
    }
  }

  void run(RandomSource& rng) {
    while (!over()) step(rng);
  }

  TrialRecord record(bool keep_edges = false, bool keep_transcript = false) const {
    TrialRecord r;
    r.winner = winner_;
    r.reason = reason_;
    r.rounds_used = state_.round();
    r.maker_attempts = attempts_;
    r.maker_failures = failures_;
    r.seed = cfg_.seed;
    r.dead_position = dead_;
    r.stalled = reason_ == Reason::StallCap;
    if (keep_edges) {
      std::vector<Edge> edges;
      const auto& m = state_.maker_knowledge().mine();
      for (int u = 0; u < cfg_.n; ++u)
        for (int v = u + 1; v < cfg_.n; ++v)
          if (m.test(u, v)) edges.push_back({u, v});
      r.maker_edges = std::move(edges);
    }
    if (keep_transcript) r.transcript = state_.transcript();
    return r;
  }

  /// Memoization key: board, engine position and both strategy states.
  void encode(StateKey& key) const {
    state_.encode(key);
    key.push_back(static_cast<std::uint64_t>(phase_));
    key.push_back(static_cast<std::uint64_t>(claims_left_));
    if (phase_ == Phase::Over) key.push_back(winner_ == Actor::Maker ? 1 : 0);
    maker_.encode(key);
    breaker_.encode(key);
  }

  /// Full win check on Maker's current graph.
  bool maker_has_won() const {
    const auto& m = state_.maker_knowledge().mine();
    const Certificate* cert = maker_.certificate();
    switch (cfg_.game) {
      case GameKind::MinDegree:
        return reached_ == cfg_.n;
      case GameKind::Connectivity:
        return comps_.connected();
      case GameKind::PerfectMatching: {
        if (cert && cert->kind == Certificate::Kind::Matching && verify_matching_certificate(m, cert->data)) return true;
        if (reached_ < cfg_.n) return false;
        if (cfg_.n > kExactMatchingLimit) {
          if (!final_check_) return false;
          return check_perfect_matching(m, cfg_.n);
        }
        return exact_has_perfect_matching(m);
      }
      case GameKind::Hamiltonicity: {
        if (cert && cert->kind == Certificate::Kind::Cycle && verify_cycle_certificate(m, cert->data)) return true;
        if (reached_ < cfg_.n) return false;
        if (cfg_.n > kExactHamiltonLimit) {
          if (!final_check_) return false;
          return check_hamilton(m, cfg_.n);
        }
        return exact_has_hamilton_cycle(m);
      }
    }
    return false;
  }

 private:
  enum class Phase : std::uint8_t { MakerTurn, BreakerTurn, Over };

  void finish(Actor winner, Reason reason) {
    winner_ = winner;
    reason_ = reason;
    phase_ = Phase::Over;
  }

  void exhaust() {
    final_check_ = true;
    finish(maker_has_won() ? Actor::Maker : Actor::Breaker, Reason::BoardExhausted);
  }

  void maker_step(RandomSource& rng) {
    if (state_.maker_attempts_this_round() == 0 && state_.round() > cfg_.effective_stall_cap()) {
      finish(Actor::Breaker, Reason::StallCap);
      return;
    }
    if (state_.free_count() == 0) {
      exhaust();
      return;
    }
    if (state_.maker_attempts_this_round() >= cfg_.a) {
      begin_breaker_turn();
      return;
    }
    const MakerView view = state_.maker_view();
    const MakerMove move = maker_.next(view, rng);
    switch (move.kind) {
      case MakerMove::Kind::Forfeit:
        finish(Actor::Breaker, Reason::MakerForfeit);
        return;
      case MakerMove::Kind::Done:
        if (maker_has_won()) {
          finish(Actor::Maker, Reason::MakerWin);
        } else if (native_game(maker_.name()) == cfg_.game) {
          throw ContractError("certificate failure: " + maker_.name() + " reported a win the checker rejects");
        } else {
          // The strategy finished its own target, which does not win this game.
          finish(Actor::Breaker, Reason::MakerForfeit);
        }
        return;
      case MakerMove::Kind::Attempt:
        break;
    }
    const Edge e = move.edge;
    const MoveOutcome out = state_.attempt_claim_maker(e);
    ++attempts_;
    if (out == MoveOutcome::Failure) ++failures_;
    maker_.on_outcome(state_.maker_view(), e, out);
    breaker_.observe_maker(state_, e, out);
    if (out == MoveOutcome::Claimed) {
      for (int v : {e.u, e.v})
        if (state_.maker_degree(v) == target_degree_) ++reached_;
      if (cfg_.game == GameKind::Connectivity) comps_.add_edge(e);
      if (maker_has_won()) {
        finish(Actor::Maker, Reason::MakerWin);
        return;
      }
    }
    if (state_.free_count() == 0) exhaust();
  }

  void begin_breaker_turn() {
    phase_ = Phase::BreakerTurn;
    claims_left_ = static_cast<int>(std::min<std::int64_t>(cfg_.b, state_.free_count()));
  }

  void breaker_step(RandomSource& rng) {
    if (claims_left_ == 0) {
      state_.next_round();
      phase_ = Phase::MakerTurn;
      return;
    }
    const BreakerMove move = breaker_.next(state_, rng);
    if (move.forfeit) {
      finish(Actor::Maker, Reason::BreakerForfeit);
      return;
    }
    state_.claim_breaker(move.edge);
    --claims_left_;
    const int need = cfg_.required_degree();
    for (int v : {move.edge.u, move.edge.v}) {
      if (state_.maker_degree(v) + state_.free_degree(v) < need) {
        dead_ = true;
        finish(Actor::Breaker, Reason::BoardExhausted);
        return;
      }
    }
  }

  GameConfig cfg_;
  BoardState state_;
  Maker maker_;
  Breaker breaker_;
  ComponentIndex comps_;
  int target_degree_;
  int reached_ = 0;  ///< vertices with Maker degree >= target_degree_
  Phase phase_ = Phase::MakerTurn;
  int claims_left_ = 0;
  std::int64_t attempts_ = 0;
  std::int64_t failures_ = 0;
  bool dead_ = false;
  bool final_check_ = false;
  Actor winner_ = Actor::Breaker;
  Reason reason_ = Reason::BoardExhausted;
};

/// Plays one complete game.
inline TrialRecord run_game(const GameConfig& cfg, Maker maker, Breaker breaker, RandomSource& rng,
                            bool keep_edges = false, bool keep_transcript = false) {
  Game g(cfg, std::move(maker), std::move(breaker));
  g.run(rng);
  return g.record(keep_edges, keep_transcript);
}

/// Convenience overload: strategies by registry name, seeded from cfg.seed.
inline TrialRecord run_game(const GameConfig& cfg, std::string_view maker, std::string_view breaker,
                            Sampling sampling = Sampling::KnowledgeAware, bool keep_edges = false,
                            bool keep_transcript = false) {
  SeededRandom rng(cfg.seed);
  return run_game(cfg, make_maker(maker, cfg, sampling), make_breaker(breaker, cfg), rng, keep_edges, keep_transcript);
}

}  // namespace phantom
