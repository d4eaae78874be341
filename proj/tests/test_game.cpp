#include <gtest/gtest.h>

#include <vector>

#include "phantom/game.hpp"
#include "phantom/win_check.hpp"

using namespace phantom;

namespace {

GameConfig config(GameKind g, int n, int a, int b, int k = 1, std::uint64_t seed = 0) {
  GameConfig c;
  c.game = g;
  c.n = n;
  c.a = a;
  c.b = b;
  c.k = k;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Game, SingleEdgeBoardIsWonInRoundOne) {
  for (GameKind g : {GameKind::MinDegree, GameKind::Connectivity, GameKind::PerfectMatching}) {
    const TrialRecord r = run_game(config(g, 2, 1, 1), "random", "random");
    EXPECT_EQ(r.winner, Actor::Maker);
    EXPECT_EQ(r.reason, Reason::MakerWin);
    EXPECT_EQ(r.rounds_used, 1);
    EXPECT_EQ(r.maker_attempts, 1);
  }
}

TEST(Game, StarPhasesIsolatesAVertexOfK4) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TrialRecord r = run_game(config(GameKind::MinDegree, 4, 1, 6, 1, seed), "random", "star-phases");
    EXPECT_EQ(r.winner, Actor::Breaker);
    EXPECT_TRUE(r.dead_position);
    EXPECT_EQ(r.rounds_used, 1);
  }
}

TEST(Game, TriangleWithTwoMovesIsAlwaysWon) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TrialRecord r = run_game(config(GameKind::Connectivity, 3, 2, 1, 1, seed), "random", "random");
    EXPECT_EQ(r.reason, Reason::MakerWin);
  }
}

TEST(Game, TriangleWithOneMoveIsNotAlwaysWon) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed)
    wins += run_game(config(GameKind::Connectivity, 3, 1, 1, 1, seed), "random", "random").winner == Actor::Maker;
  EXPECT_GT(wins, 150);
  EXPECT_LT(wins, 250);
}

TEST(Game, SameSeedSameRecord) {
  const GameConfig cfg = config(GameKind::Hamiltonicity, 40, 1, 1, 1, 77);
  const TrialRecord a = run_game(cfg, "hamilton", "random", Sampling::KnowledgeAware, true, true);
  const TrialRecord b = run_game(cfg, "hamilton", "random", Sampling::KnowledgeAware, true, true);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.seed, 77u);
}

TEST(Game, RecordIsConsistentWithTheTranscript) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameConfig cfg = config(GameKind::MinDegree, 12, 2, 3, 2, seed);
    const TrialRecord r = run_game(cfg, "mindeg-large", "random", Sampling::KnowledgeAware, true, true);
    std::int64_t attempts = 0, failures = 0, claims = 0;
    for (const TranscriptEntry& t : *r.transcript) {
      if (t.actor == Actor::Maker) {
        ++attempts;
        failures += t.outcome == MoveOutcome::Failure;
        claims += t.outcome == MoveOutcome::Claimed;
      }
    }
    EXPECT_EQ(attempts, r.maker_attempts);
    EXPECT_EQ(failures, r.maker_failures);
    EXPECT_EQ(claims, static_cast<std::int64_t>(r.maker_edges->size()));
    EXPECT_LE(r.maker_attempts, r.rounds_used * cfg.a);
    EXPECT_EQ(r.winner == Actor::Maker, r.reason == Reason::MakerWin || r.reason == Reason::BreakerForfeit ||
                                            (r.reason == Reason::BoardExhausted && !r.dead_position &&
                                             check_mindegree(make_graph(cfg.n, *r.maker_edges), cfg.k)));
    if (r.reason == Reason::MakerWin) {
      EXPECT_TRUE(check_mindegree(make_graph(cfg.n, *r.maker_edges), cfg.k));
    }
  }
}

TEST(Game, StallCapEndsTheGameForBreaker) {
  int stalled = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GameConfig cfg = config(GameKind::Hamiltonicity, 8, 1, 1, 1, seed);
    cfg.stall_cap = 14;
    const TrialRecord r = run_game(cfg, "random", "random", Sampling::Strict);
    if (r.reason != Reason::StallCap) continue;
    ++stalled;
    EXPECT_TRUE(r.stalled);
    EXPECT_EQ(r.winner, Actor::Breaker);
    EXPECT_EQ(r.rounds_used, 15);
  }
  EXPECT_GT(stalled, 0);
}

TEST(Game, NonNativeStrategyFinishingItsTargetForfeits) {
  int forfeits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GameConfig cfg = config(GameKind::Connectivity, 12, 1, 3, 1, seed);
    const TrialRecord r = run_game(cfg, "mindeg-large", "random", Sampling::KnowledgeAware, true);
    if (r.reason == Reason::MakerForfeit && check_mindegree(make_graph(cfg.n, *r.maker_edges), 1)) {
      ++forfeits;
      EXPECT_FALSE(check_connectivity(make_graph(cfg.n, *r.maker_edges)));
    }
  }
  EXPECT_GT(forfeits, 0);
}

TEST(Game, StepsAreAtomic) {
  const GameConfig cfg = config(GameKind::Connectivity, 10, 2, 2, 1, 5);
  Game g(cfg, make_maker("conn-small", cfg), make_breaker("random", cfg));
  SeededRandom rng(cfg.seed);
  std::size_t moves = 0;
  while (!g.over()) {
    g.step(rng);
    const std::size_t now = g.state().transcript().size();
    ASSERT_LE(now, moves + 1);
    moves = now;
    ASSERT_TRUE(g.state().check_invariants());
  }
}

TEST(Game, EncodingSeparatesDifferentPositions) {
  const GameConfig cfg = config(GameKind::Connectivity, 6, 1, 1, 1, 3);
  Game g(cfg, make_maker("random", cfg), make_breaker("random", cfg));
  SeededRandom rng(3);
  StateKey prev;
  g.encode(prev);
  while (!g.over()) {
    g.step(rng);
    StateKey now;
    g.encode(now);
    EXPECT_NE(now, prev);
    prev = std::move(now);
  }
}
