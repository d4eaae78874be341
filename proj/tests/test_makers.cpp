#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "phantom/components.hpp"
#include "phantom/game.hpp"
#include "phantom/win_check.hpp"

using namespace phantom;

namespace {

GameConfig config(GameKind g, int n, int a, int b, int k = 1) {
  GameConfig c;
  c.game = g;
  c.n = n;
  c.a = a;
  c.b = b;
  c.k = k;
  return c;
}

std::uint64_t first_choice(const std::string& maker, const GameConfig& cfg) {
  Maker m = make_maker(maker, cfg);
  BoardState s(cfg);
  ScriptedRandom none(std::span<const std::uint64_t>{});
  try {
    m.next(s.maker_view(), none);
  } catch (const ChoiceRequired& c) {
    return c.options;
  }
  return 1;
}

template <class Owns>
SurgeryPlan plan_of(const std::vector<int>& path, int x, int xp, int yp, Owns owns) {
  const SurgeryResult r = path_surgery(std::span<const int>(path), x, xp, yp, owns);
  EXPECT_TRUE(std::holds_alternative<SurgeryPlan>(r));
  return std::get<SurgeryPlan>(r);
}

}  // namespace

TEST(Registry, UnknownNamesAreConfigErrors) {
  const GameConfig cfg = config(GameKind::MinDegree, 6, 1, 1);
  EXPECT_THROW(make_maker("greedy", cfg), ConfigError);
  EXPECT_THROW(make_breaker("greedy", cfg), ConfigError);
  for (auto name : kMakerNames) EXPECT_EQ(make_maker(name, config(GameKind::PerfectMatching, 6, 1, 1)).name(), name);
}

TEST(Registry, OddPerfectMatchingIsADomainError) {
  const GameConfig cfg = config(GameKind::MinDegree, 5, 1, 1);
  EXPECT_THROW(make_maker("pm-large", cfg), DomainError);
  EXPECT_THROW(make_maker("pm-small", cfg), DomainError);
}

TEST(MindegLarge, FirstChoiceIsAUniformVertex) {
  EXPECT_EQ(first_choice("mindeg-large", config(GameKind::MinDegree, 7, 1, 3)), 7u);
}

TEST(MindegLarge, PhaseLengthsFollowTheBias) {
  const auto p = StrategyParams::resolve(1000, 1, 3, 1);
  EXPECT_EQ(p.mindeg_large_phase_len, 17);   // ceil(1000 / 60)
  EXPECT_EQ(p.mindeg_large_phase_rounds, 34);
}

TEST(MindegLarge, DrainsTheVertexPool) {
  const GameConfig cfg = config(GameKind::MinDegree, 60, 1, 3, 2);
  Game g(cfg, make_maker("mindeg-large", cfg), make_breaker("random", cfg));
  SeededRandom rng(4);
  g.run(rng);
  if (g.record().winner == Actor::Maker) {
    EXPECT_TRUE(g.maker().as<MindegLargeMaker>()->remaining().empty());
    EXPECT_TRUE(check_mindegree(g.state().maker_knowledge().mine(), 2));
  }
}

TEST(Makers, NeverBreakTheEngineContract) {
  struct Case {
    const char* maker;
    GameKind game;
    int n, a, b;
  };
  const std::vector<Case> cases{
      {"mindeg-large", GameKind::MinDegree, 30, 1, 3},  {"mindeg-small", GameKind::MinDegree, 30, 2, 1},
      {"pm-large", GameKind::PerfectMatching, 30, 1, 3}, {"pm-small", GameKind::PerfectMatching, 30, 1, 1},
      {"conn-large", GameKind::Connectivity, 30, 1, 3},  {"conn-small", GameKind::Connectivity, 30, 1, 1},
      {"hamilton", GameKind::Hamiltonicity, 30, 1, 1},   {"random", GameKind::Connectivity, 30, 1, 1},
  };
  for (const auto& c : cases) {
    for (const char* breaker : {"random", "star-phases", "single-star"}) {
      for (std::uint64_t seed = 0; seed < 15; ++seed) {
        for (Sampling mode : {Sampling::KnowledgeAware, Sampling::Strict}) {
          GameConfig cfg = config(c.game, c.n, c.a, c.b);
          cfg.seed = seed;
          ASSERT_NO_THROW(run_game(cfg, c.maker, breaker, mode)) << c.maker << " vs " << breaker << " seed " << seed;
        }
      }
    }
  }
}

TEST(PerfectMatching, CertificateMatchesMakersGraph) {
  for (const char* name : {"pm-large", "pm-small"}) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const GameConfig cfg = config(GameKind::PerfectMatching, 200, 1, std::string(name) == "pm-large" ? 3 : 1);
      Game g(cfg, make_maker(name, cfg), make_breaker("random", cfg));
      SeededRandom rng(seed);
      g.run(rng);
      const Certificate* cert = g.maker().certificate();
      if (g.record().reason != Reason::MakerWin) continue;
      ++wins;
      ASSERT_NE(cert, nullptr);
      EXPECT_TRUE(verify_matching_certificate(g.state().maker_knowledge().mine(), cert->data));
    }
    EXPECT_GT(wins, 0) << name;
  }
}

TEST(Hamilton, CertificateIsAHamiltonCycle) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const GameConfig cfg = config(GameKind::Hamiltonicity, 50, 1, 1);
    Game g(cfg, make_maker("hamilton", cfg), make_breaker("random", cfg));
    SeededRandom rng(seed);
    g.run(rng);
    if (g.record().reason != Reason::MakerWin) continue;
    ++wins;
    ASSERT_NE(g.maker().certificate(), nullptr);
    EXPECT_TRUE(verify_cycle_certificate(g.state().maker_knowledge().mine(), g.maker().certificate()->data));
  }
  EXPECT_GT(wins, 30);
}

TEST(ConnLarge, MakersGraphStaysAcyclic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GameConfig cfg = config(GameKind::Connectivity, 60, 1, 3);
    cfg.seed = seed;
    const TrialRecord r = run_game(cfg, "conn-large", "random", Sampling::KnowledgeAware, true);
    ComponentIndex comps(cfg.n);
    for (const Edge& e : *r.maker_edges) EXPECT_TRUE(comps.unite(e.u, e.v)) << "cycle at seed " << seed;
    if (r.reason == Reason::MakerWin) {
      EXPECT_EQ(r.maker_edges->size(), 59u);
    }
  }
}

TEST(RandomMaker, NeverClaimsAKnownEdge) {
  GameConfig cfg = config(GameKind::Connectivity, 12, 1, 2);
  cfg.seed = 8;
  const TrialRecord r = run_game(cfg, "random", "random", Sampling::KnowledgeAware, false, true);
  std::vector<Edge> failed;
  for (const TranscriptEntry& t : *r.transcript) {
    if (t.actor != Actor::Maker) continue;
    for (const Edge& f : failed) EXPECT_NE(t.edge, f);
    if (t.outcome == MoveOutcome::Failure) failed.push_back(t.edge);
  }
}

TEST(PathSurgery, BothOutside) {
  // Path (y, v2, v3) with y = 2, v2 = 3, v3 = 4; x = 0, x' = 1, y' = 5.
  const std::vector<int> path{2, 3, 4};
  auto owns = [](Edge e) { return e == Edge(0, 1) || e == Edge(2, 5); };
  const SurgeryPlan p = plan_of(path, 0, 1, 5, owns);
  EXPECT_EQ(p.kind, SurgeryCase::BothOutside);
  EXPECT_EQ(p.edge, Edge(1, 5));
  EXPECT_EQ(p.order, (std::vector<int>{0, 1, 5, 2, 3, 4}));
}

TEST(PathSurgery, BothOnPath) {
  // P = v1..v6 = 1..6, x = 0, x' = v3, y' = v5: claim v2 v6.
  const std::vector<int> path{1, 2, 3, 4, 5, 6};
  auto owns = [](Edge e) { return e == Edge(0, 3) || e == Edge(1, 5); };
  const SurgeryPlan p = plan_of(path, 0, 3, 5, owns);
  EXPECT_EQ(p.kind, SurgeryCase::BothOnPath);
  EXPECT_EQ(p.edge, Edge(2, 6));
  EXPECT_EQ(p.order, (std::vector<int>{0, 3, 4, 5, 1, 2, 6}));
}

TEST(PathSurgery, BothOnPathAtTheFarEndIsDegenerate) {
  const std::vector<int> path{1, 2, 3, 4, 5, 6};
  auto owns = [](Edge e) { return e == Edge(0, 3) || e == Edge(1, 6); };
  const SurgeryResult r = path_surgery(std::span<const int>(path), 0, 3, 6, owns);
  ASSERT_TRUE(std::holds_alternative<Degenerate>(r));
  EXPECT_EQ(std::get<Degenerate>(r).reason, Degenerate::Reason::OutOfRange);
}

TEST(PathSurgery, XPrimeOnPath) {
  const std::vector<int> path{1, 2, 3, 4};
  auto owns = [](Edge e) { return e == Edge(0, 2) || e == Edge(1, 9); };
  const SurgeryPlan p = plan_of(path, 0, 2, 9, owns);
  EXPECT_EQ(p.kind, SurgeryCase::XOnPath);
  EXPECT_EQ(p.edge, Edge(3, 9));
  EXPECT_EQ(p.order, (std::vector<int>{0, 2, 1, 9, 3, 4}));
}

TEST(PathSurgery, YPrimeOnPath) {
  const std::vector<int> path{1, 2, 3, 4};
  auto owns = [](Edge e) { return e == Edge(0, 8) || e == Edge(1, 3); };
  const SurgeryPlan p = plan_of(path, 0, 8, 3, owns);
  EXPECT_EQ(p.kind, SurgeryCase::YOnPath);
  EXPECT_EQ(p.edge, Edge(8, 2));
  EXPECT_EQ(p.order, (std::vector<int>{0, 8, 2, 1, 3, 4}));
}

TEST(PathSurgery, OwnedNewEdgeIsDegenerate) {
  const std::vector<int> path{2, 3, 4};
  auto owns = [](Edge e) { return e == Edge(0, 1) || e == Edge(2, 5) || e == Edge(1, 5); };
  const SurgeryResult r = path_surgery(std::span<const int>(path), 0, 1, 5, owns);
  ASSERT_TRUE(std::holds_alternative<Degenerate>(r));
  EXPECT_EQ(std::get<Degenerate>(r).reason, Degenerate::Reason::AlreadyOwned);
}

TEST(PathSurgery, RejectsBadInput) {
  const std::vector<int> path{2, 3, 4};
  auto all = [](Edge) { return true; };
  auto none = [](Edge) { return false; };
  EXPECT_THROW(path_surgery(std::span<const int>(path), 3, 1, 5, all), ContractError);
  EXPECT_THROW(path_surgery(std::span<const int>(path), 0, 1, 5, none), ContractError);
  EXPECT_THROW(path_surgery(std::span<const int>(path), 0, 5, 5, all), ContractError);
}

TEST(ConnSmall, OddOrderLeavesTheLastVertexOutOfTheMatching) {
  int matched = 0, wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameConfig cfg = config(GameKind::Connectivity, 301, 2, 1);
    cfg.seed = seed;
    Game g(cfg, make_maker("conn-small", cfg), make_breaker("random", cfg));
    SeededRandom rng(seed);
    g.run(rng);
    const auto* m = g.maker().as<ConnSmallMaker>();
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->matching().partner(300), -1);
    wins += g.record().reason == Reason::MakerWin;
    if (m->stage() == 1) continue;
    ++matched;
    for (int v = 0; v < 300; ++v) ASSERT_NE(m->matching().partner(v), -1);
  }
  EXPECT_GT(matched, 0);
  EXPECT_GT(wins, 15);
}
