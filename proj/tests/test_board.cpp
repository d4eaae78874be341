#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "phantom/board.hpp"
#include "phantom/components.hpp"
#include "phantom/random.hpp"

using namespace phantom;

namespace {

GameConfig config(int n, int a = 1, int b = 1, GameKind g = GameKind::MinDegree, int k = 1) {
  GameConfig c;
  c.n = n;
  c.a = a;
  c.b = b;
  c.game = g;
  c.k = k;
  return c;
}

}  // namespace

TEST(Board, FreshBoardHasEveryEdgeFree) {
  BoardState s(config(4));
  EXPECT_EQ(s.free_count(), 6);
  EXPECT_EQ(s.round(), 1);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(s.free_degree(v), 3);
  EXPECT_TRUE(s.check_invariants());

  BoardState two(config(2));
  EXPECT_EQ(two.free_count(), 1);
  EXPECT_EQ(two.free_edge(0), Edge(0, 1));
}

TEST(Board, ConfigValidation) {
  EXPECT_THROW(BoardState(config(5, 1, 1, GameKind::PerfectMatching)), ConfigError);
  EXPECT_THROW(BoardState(config(1)), ConfigError);
  EXPECT_THROW(BoardState(config(4, 0, 1)), ConfigError);
  EXPECT_THROW(BoardState(config(4, 1, 0)), ConfigError);
  EXPECT_THROW(BoardState(config(4, 1, 1, GameKind::MinDegree, 0)), ConfigError);
  EXPECT_THROW(BoardState(config(2, 1, 1, GameKind::Hamiltonicity)), ConfigError);
  GameConfig capped = config(10);
  capped.stall_cap = 5;  // below ceil(45 / 2)
  EXPECT_THROW(capped.validate(), ConfigError);
  capped.stall_cap = 23;
  EXPECT_NO_THROW(capped.validate());
}

TEST(Board, MakerClaimsAFreeEdge) {
  BoardState s(config(4));
  EXPECT_EQ(s.attempt_claim_maker({0, 1}), MoveOutcome::Claimed);
  EXPECT_EQ(s.owner({0, 1}), Owner::Maker);
  EXPECT_EQ(s.free_count(), 5);
  EXPECT_EQ(s.maker_degree(0), 1);
  EXPECT_EQ(s.free_degree(0), 2);
}

TEST(Board, FailedAttemptRevealsAndCostsAMove) {
  BoardState s(config(4, 2, 1));
  s.claim_breaker({1, 2});
  EXPECT_FALSE(s.known_breaker({1, 2}));
  EXPECT_EQ(s.attempt_claim_maker({1, 2}), MoveOutcome::Failure);
  EXPECT_TRUE(s.known_breaker({1, 2}));
  EXPECT_EQ(s.owner({1, 2}), Owner::Breaker);
  EXPECT_EQ(s.maker_attempts_this_round(), 1);
  EXPECT_EQ(s.maker_view().attempt_budget_left(), 1);
  // Trying the same Breaker edge again is legal and fails again.
  EXPECT_EQ(s.attempt_claim_maker({1, 2}), MoveOutcome::Failure);
  EXPECT_EQ(s.maker_knowledge().revealed_count(), 1);
  EXPECT_TRUE(s.check_invariants());
}

TEST(Board, ContractViolations) {
  BoardState s(config(4));
  s.attempt_claim_maker({0, 1});
  EXPECT_THROW(s.attempt_claim_maker({0, 1}), ContractError);
  s.next_round();
  EXPECT_THROW(s.claim_breaker({0, 1}), ContractError);
  s.claim_breaker({2, 3});
  EXPECT_THROW(s.claim_breaker({2, 3}), ContractError);
  EXPECT_THROW(s.attempt_claim_maker({0, 4}), ContractError);
  EXPECT_THROW(s.attempt_claim_maker({2, 2}), ContractError);
  s.attempt_claim_maker({0, 2});
  EXPECT_THROW(s.attempt_claim_maker({0, 3}), ContractError);  // budget a = 1
}

TEST(Board, NextRoundResetsTheBudget) {
  BoardState s(config(5, 2, 1));
  s.attempt_claim_maker({0, 1});
  s.attempt_claim_maker({0, 2});
  s.next_round();
  EXPECT_EQ(s.round(), 2);
  EXPECT_EQ(s.maker_view().attempt_budget_left(), 2);
}

TEST(Board, MakerViewCannotSeeHiddenBreakerEdges) {
  BoardState s(config(6));
  const StateKey before = [&] {
    StateKey k;
    s.maker_knowledge().encode(k);
    return k;
  }();
  s.claim_breaker({0, 1});
  s.claim_breaker({3, 5});
  StateKey after;
  s.maker_knowledge().encode(after);
  EXPECT_EQ(before, after);
  EXPECT_EQ(s.maker_view().knowledge().unknown_count(), 15);
  EXPECT_FALSE(s.maker_view().known_unavailable({0, 1}));
}

TEST(Board, FreeEdgeEnumerationIsCanonical) {
  BoardState s(config(5));
  s.claim_breaker({0, 2});
  s.attempt_claim_maker({1, 3});
  std::vector<Edge> listed;
  for (std::int64_t r = 0; r < s.free_count(); ++r) listed.push_back(s.free_edge(r));
  std::vector<Edge> expected;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v)
      if (s.is_free({u, v})) expected.push_back({u, v});
  EXPECT_EQ(listed, expected);
  EXPECT_THROW(s.free_edge(s.free_count()), ContractError);
}

TEST(Board, FreeNeighboursInIdOrder) {
  BoardState s(config(5));
  s.claim_breaker({2, 0});
  s.attempt_claim_maker({2, 3});
  EXPECT_EQ(s.free_degree(2), 2);
  EXPECT_EQ(s.free_neighbor(2, 0), 1);
  EXPECT_EQ(s.free_neighbor(2, 1), 4);
}

TEST(Board, UnknownEdgesExcludeKnownOnes) {
  BoardState s(config(4));
  s.claim_breaker({0, 3});
  s.attempt_claim_maker({0, 3});
  s.next_round();
  s.attempt_claim_maker({1, 2});
  const MakerKnowledge& k = s.maker_knowledge();
  EXPECT_EQ(k.unknown_count(), 4);
  std::set<Edge> unknown;
  for (std::int64_t r = 0; r < k.unknown_count(); ++r) unknown.insert(k.unknown_edge(r));
  EXPECT_EQ(unknown, (std::set<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

TEST(Board, InvariantsHoldUnderRandomPlay) {
  SeededRandom rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_index(20));
    BoardState s(config(n, 1 + static_cast<int>(rng.uniform_index(3)), 1 + static_cast<int>(rng.uniform_index(3))));
    while (s.free_count() > 0) {
      for (int t = 0; t < s.config().a; ++t) {
        std::vector<Edge> options;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (!s.maker_knowledge().owns({u, v})) options.push_back({u, v});
        s.attempt_claim_maker(options[rng.uniform_index(options.size())]);
      }
      for (int t = 0; t < s.config().b && s.free_count() > 0; ++t)
        s.claim_breaker(s.free_edge(static_cast<std::int64_t>(rng.uniform_index(s.free_count()))));
      s.next_round();
      ASSERT_TRUE(s.check_invariants());
    }
    EXPECT_EQ(s.maker_edge_count() + s.breaker_edge_count(), GameConfig(s.config()).edge_count());
  }
}

TEST(Board, TranscriptRecordsEveryMove) {
  BoardState s(config(4));
  s.claim_breaker({0, 1});
  s.attempt_claim_maker({0, 1});
  s.next_round();
  s.attempt_claim_maker({2, 3});
  ASSERT_EQ(s.transcript().size(), 3u);
  EXPECT_EQ(s.transcript()[0], (TranscriptEntry{Actor::Breaker, {0, 1}, MoveOutcome::Claimed}));
  EXPECT_EQ(s.transcript()[1], (TranscriptEntry{Actor::Maker, {0, 1}, MoveOutcome::Failure}));
  EXPECT_EQ(s.transcript()[2], (TranscriptEntry{Actor::Maker, {2, 3}, MoveOutcome::Claimed}));
}

TEST(ComponentIndex, MergesAndReportsSmallestId) {
  ComponentIndex c(6, true);
  EXPECT_EQ(c.components(), 6);
  EXPECT_TRUE(c.unite(4, 5));
  EXPECT_TRUE(c.unite(5, 2));
  EXPECT_FALSE(c.unite(2, 4));
  EXPECT_EQ(c.components(), 4);
  EXPECT_EQ(c.representative(5), 2);
  EXPECT_EQ(c.component_size(4), 3);
  EXPECT_TRUE(c.same(2, 4));
  EXPECT_FALSE(c.same(0, 4));
  EXPECT_EQ(c.members(4).count(), 3);
  c.unite(0, 1);
  c.unite(1, 3);
  c.unite(3, 4);
  EXPECT_TRUE(c.connected());
  EXPECT_EQ(c.representative(5), 0);
}
