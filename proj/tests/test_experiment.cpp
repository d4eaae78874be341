#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phantom/experiment.hpp"
#include "phantom/results.hpp"
#include "phantom/sweep.hpp"

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

SweepSpec small_sweep() {
  SweepSpec s;
  s.games = {GameKind::Connectivity};
  s.ns = {8, 10};
  s.as = {1};
  s.bs = {1, 2};
  s.ks = {1};
  s.makers = {"random", "conn-large"};
  s.breakers = {"random"};
  s.trials = 40;
  s.master_seed = 9;
  return s;
}

}  // namespace

TEST(Wilson, MatchesRootsOfTheScoreEquation) {
  // Endpoints found by bisection on (p_hat - p)^2 = z^2 p (1 - p) / n.
  struct Case {
    std::int64_t w, n;
    double z, lo, hi;
  };
  const Case cases[] = {
      {50, 100, 1.96, 0.40382982859014716, 0.59617017140985284},
      {7, 30, 1.96, 0.11792239210501226, 0.40928672330324267},
      {3, 1000, 2.576, 0.00075804126763539506, 0.011794439283185007},
  };
  for (const auto& c : cases) {
    const Interval i = wilson_interval(c.w, c.n, c.z);
    EXPECT_NEAR(i.low, c.lo, 1e-12);
    EXPECT_NEAR(i.high, c.hi, 1e-12);
  }
}

TEST(Wilson, Extremes) {
  const Interval none = wilson_interval(0, 100);
  EXPECT_EQ(none.low, 0.0);
  EXPECT_GT(none.high, 0.0);
  EXPECT_NEAR(none.high, 0.037, 1e-3);
  const Interval all = wilson_interval(100, 100);
  EXPECT_EQ(all.high, 1.0);
  EXPECT_NEAR(all.low, 0.963, 1e-3);
}

TEST(Wilson, IsSymmetricUnderComplement) {
  for (std::int64_t w = 0; w <= 40; ++w) {
    const Interval a = wilson_interval(w, 40);
    const Interval b = wilson_interval(40 - w, 40);
    EXPECT_NEAR(a.low, 1.0 - b.high, 1e-12);
    EXPECT_NEAR(a.high, 1.0 - b.low, 1e-12);
    EXPECT_LE(a.low, static_cast<double>(w) / 40);
    EXPECT_GE(a.high, static_cast<double>(w) / 40);
  }
}

TEST(Wilson, DomainErrors) {
  EXPECT_THROW(wilson_interval(0, 0), DomainError);
  EXPECT_THROW(wilson_interval(5, 4), DomainError);
  EXPECT_THROW(wilson_interval(-1, 4), DomainError);
  EXPECT_THROW(wilson_interval(1, 4, 0.0), DomainError);
}

TEST(BinomialBand, ContainsTheMeanAndShrinks) {
  const Interval a = binomial_interval(0.3, 1000);
  const Interval b = binomial_interval(0.3, 100000);
  EXPECT_LT(a.low, 0.3);
  EXPECT_GT(a.high, 0.3);
  EXPECT_LT(b.high - b.low, a.high - a.low);
  EXPECT_EQ(binomial_interval(0.0, 10).high, 0.0);
  EXPECT_EQ(binomial_interval(1.0, 10).low, 1.0);
  EXPECT_THROW(binomial_interval(1.5, 10), DomainError);
}

TEST(RunTrials, WorkerCountDoesNotChangeResults) {
  const GameConfig cfg = config(GameKind::Hamiltonicity, 30, 1, 1);
  TrialOptions opt;
  opt.keep_records = true;
  opt.reservoir = 10;
  opt.workers = 1;
  const TrialRun one = run_trials(cfg, "hamilton", "random", 120, 5, opt);
  for (int w : {2, 3, 8}) {
    opt.workers = w;
    const TrialRun many = run_trials(cfg, "hamilton", "random", 120, 5, opt);
    EXPECT_EQ(one.stats, many.stats);
    EXPECT_EQ(one.records, many.records);
    EXPECT_EQ(one.reservoir, many.reservoir);
  }
  EXPECT_EQ(one.records.size(), 120u);
  EXPECT_EQ(one.reservoir.size(), 10u);
  for (std::size_t i = 0; i < one.records.size(); ++i) EXPECT_EQ(one.records[i].seed, mix_seed(5, i));
  for (const auto& r : one.reservoir) EXPECT_TRUE(r.transcript.has_value());
}

TEST(RunTrials, AggregatesAddUp) {
  TrialOptions opt;
  opt.keep_records = true;
  const TrialRun run = run_trials(config(GameKind::MinDegree, 12, 1, 2), "mindeg-small", "single-star", 200, 1, opt);
  std::int64_t wins = 0, reasons = 0, rounds = 0;
  for (const auto& r : run.records) {
    wins += r.winner == Actor::Maker;
    rounds += r.rounds_used;
  }
  for (auto c : run.stats.reasons) reasons += c;
  EXPECT_EQ(run.stats.maker_wins, wins);
  EXPECT_EQ(reasons, 200);
  EXPECT_DOUBLE_EQ(run.stats.mean_rounds, static_cast<double>(rounds) / 200);
  EXPECT_LE(run.stats.wilson_low, run.stats.maker_frequency);
  EXPECT_GE(run.stats.wilson_high, run.stats.maker_frequency);
}

TEST(RunTrials, RejectsBadInput) {
  EXPECT_THROW(run_trials(config(GameKind::MinDegree, 6, 1, 1), "random", "random", 0, 1), ConfigError);
  EXPECT_THROW(run_trials(config(GameKind::MinDegree, 6, 1, 1), "nobody", "random", 5, 1), ConfigError);
  EXPECT_THROW(run_trials(config(GameKind::PerfectMatching, 7, 1, 1), "random", "random", 5, 1), ConfigError);
}

TEST(RunTrials, VerifiedWinsHaveNoCertificateFailures) {
  TrialOptions opt;
  opt.verify_wins = true;
  const TrialRun run = run_trials(config(GameKind::PerfectMatching, 200, 1, 3), "pm-large", "random", 60, 3, opt);
  EXPECT_EQ(run.stats.certificate_failures, 0);
  EXPECT_GT(run.stats.maker_wins, 0);
}

TEST(Json, RunDocumentParsesAndRoundTripsDoubles) {
  RunConfig rc;
  rc.game = config(GameKind::Connectivity, 3, 1, 1);
  rc.maker = "random";
  rc.breaker = "random";
  rc.trials = 30;
  rc.seed = 4;
  TrialOptions opt;
  opt.keep_records = true;
  const TrialRun run = run_trials(rc.game, rc.maker, rc.breaker, rc.trials, rc.seed, opt);
  const auto doc = nlohmann::json::parse(run_json(rc, run, true));
  EXPECT_EQ(doc["config"]["game"], "connectivity");
  EXPECT_EQ(doc["config"]["sampling"], "knowledge-aware");
  EXPECT_EQ(doc["stats"]["trials"], 30);
  EXPECT_EQ(doc["stats"]["maker_wins"], run.stats.maker_wins);
  EXPECT_EQ(doc["stats"]["frequency"].get<double>(), run.stats.maker_frequency);
  EXPECT_EQ(doc["stats"]["wilson"][1].get<double>(), run.stats.wilson_high);
  EXPECT_EQ(doc["records"].size(), 30u);
  EXPECT_FALSE(nlohmann::json::parse(run_json(rc, run, false)).contains("records"));
}

TEST(Json, Escaping) {
  EXPECT_EQ(json_escape("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Grid, ParsesListsAndRanges) {
  EXPECT_EQ(parse_int_grid("3"), (std::vector<int>{3}));
  EXPECT_EQ(parse_int_grid("1,2,5"), (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(parse_int_grid("1..4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(parse_int_grid("1..2,8"), (std::vector<int>{1, 2, 8}));
  for (const char* bad : {"", "1..", "a", "3..1", "1,,2", "1.5"}) EXPECT_THROW(parse_int_grid(bad), ConfigError) << bad;
}

TEST(Sweep, OneCellMatchesRunTrials) {
  SweepSpec s = small_sweep();
  s.ns = {8};
  s.bs = {2};
  s.makers = {"conn-large"};
  std::ostringstream out;
  AggregateStats seen;
  run_sweep(s, out, {}, {}, true, [&](const SweepCell&, const AggregateStats& st) { seen = st; });
  const auto cells = expand_sweep(s);
  ASSERT_EQ(cells.size(), 1u);
  const TrialRun direct = run_trials(cells[0].cfg, "conn-large", "random", 40, cell_seed(9, cells[0].key()));
  EXPECT_EQ(seen, direct.stats);
  EXPECT_EQ(out.str(), std::string(kSweepHeader) + "\n" + sweep_row(cells[0], direct.stats) + "\n");
}

TEST(Sweep, ResumingProducesTheSameTable) {
  const SweepSpec s = small_sweep();
  std::ostringstream full;
  EXPECT_EQ(run_sweep(s, full, {}), 8);

  // Interrupt after three cells, then resume from the partial file.
  std::ostringstream partial;
  partial << kSweepHeader << '\n';
  std::istringstream lines(full.str());
  std::string line;
  std::getline(lines, line);
  for (int i = 0; i < 3 && std::getline(lines, line); ++i) partial << line << '\n';
  std::istringstream reread(partial.str());
  const auto done = completed_cells(reread);
  EXPECT_EQ(done.size(), 3u);
  std::ostringstream rest;
  EXPECT_EQ(run_sweep(s, rest, {}, done, false), 5);
  EXPECT_EQ(partial.str() + rest.str(), full.str());
}

TEST(Sweep, CellSeedsDependOnTheCellOnly) {
  SweepSpec s = small_sweep();
  std::ostringstream a, b;
  run_sweep(s, a, {});
  s.ns = {10};
  run_sweep(s, b, {});
  std::istringstream ra(a.str()), rb(b.str());
  std::string la, lb;
  std::set<std::string> rows_a;
  while (std::getline(ra, la)) rows_a.insert(la);
  while (std::getline(rb, lb)) EXPECT_TRUE(rows_a.count(lb)) << lb;
}

TEST(Sweep, BudgetAndValidation) {
  SweepSpec s = small_sweep();
  s.budget = 100;
  EXPECT_THROW(expand_sweep(s), RefusalError);
  s = small_sweep();
  s.games = {GameKind::PerfectMatching};
  s.ns = {7};
  EXPECT_THROW(expand_sweep(s), ConfigError);
  s = small_sweep();
  s.makers = {"nobody"};
  EXPECT_THROW(expand_sweep(s), ConfigError);
}
