#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "phantom/config.hpp"
#include "phantom/errors.hpp"
#include "phantom/game.hpp"
#include "phantom/random.hpp"
#include "phantom/stats.hpp"
#include "phantom/win_check.hpp"

namespace phantom {

struct AggregateStats {
  std::int64_t trials = 0;
  std::int64_t maker_wins = 0;
  double maker_frequency = 0;
  double z = 1.96;
  double wilson_low = 0;
  double wilson_high = 1;
  double mean_rounds = 0;
  double mean_failures = 0;
  std::array<std::int64_t, 5> reasons{};
  std::int64_t dead_positions = 0;
  /// MakerWin results the independent checker rejected (should stay 0).
  std::int64_t certificate_failures = 0;

  std::int64_t rounds_sum = 0;
  std::int64_t failures_sum = 0;
  std::int64_t attempts_sum = 0;

  std::int64_t reason_count(Reason r) const noexcept { return reasons[static_cast<int>(r)]; }

  void add(const TrialRecord& r) {
    ++trials;
    if (r.winner == Actor::Maker) ++maker_wins;
    ++reasons[static_cast<int>(r.reason)];
    if (r.dead_position) ++dead_positions;
    rounds_sum += r.rounds_used;
    failures_sum += r.maker_failures;
    attempts_sum += r.maker_attempts;
  }

  void merge(const AggregateStats& o) {
    trials += o.trials;
    maker_wins += o.maker_wins;
    for (std::size_t i = 0; i < reasons.size(); ++i) reasons[i] += o.reasons[i];
    dead_positions += o.dead_positions;
    certificate_failures += o.certificate_failures;
    rounds_sum += o.rounds_sum;
    failures_sum += o.failures_sum;
    attempts_sum += o.attempts_sum;
  }

  /// Derives the floating-point summaries from the integer sums.
  void finalize(double z_value) {
    z = z_value;
    if (trials == 0) return;
    const double t = static_cast<double>(trials);
    maker_frequency = static_cast<double>(maker_wins) / t;
    const Interval w = wilson_interval(maker_wins, trials, z);
    wilson_low = std::min(w.low, maker_frequency);
    wilson_high = std::max(w.high, maker_frequency);
    mean_rounds = static_cast<double>(rounds_sum) / t;
    mean_failures = static_cast<double>(failures_sum) / t;
  }

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

struct TrialOptions {
  int workers = 1;
  Sampling sampling = Sampling::KnowledgeAware;
  double z = 1.96;
  /// Keep every TrialRecord (indexed by trial), not just the aggregate.
  bool keep_records = false;
  /// With keep_records, also keep every trial's transcript.
  bool keep_transcripts = false;
  /// Full transcripts kept for a deterministic sample of this many trials.
  std::size_t reservoir = 100;
  /// Re-check every Maker win from scratch on her final edge set.
  bool verify_wins = false;
};

struct TrialRun {
  AggregateStats stats;
  std::vector<TrialRecord> records;
  /// Sampled trials with transcripts and edge sets, sorted by seed priority.
  std::vector<TrialRecord> reservoir;
};

/// Raised when a trial breaks an engine or strategy contract.
class TrialError : public ContractError {
 public:
  TrialError(const std::string& what, std::uint64_t seed, std::int64_t index)
      : ContractError(what), seed_(seed), index_(index) {}
  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t index() const noexcept { return index_; }

 private:
  std::uint64_t seed_;
  std::int64_t index_;
};

/// Independent confirmation of a Maker win: rebuild her graph and test it
/// against the winning family with the checker, never the engine's tracker.
inline bool confirm_maker_win(const GameConfig& cfg, const std::vector<Edge>& edges, const Certificate* cert) {
  const BitMatrix m = make_graph(cfg.n, edges);
  switch (cfg.game) {
    case GameKind::MinDegree:
      return check_mindegree(m, cfg.k);
    case GameKind::Connectivity:
      return check_connectivity(m);
    case GameKind::PerfectMatching: {
      std::span<const int> tracked;
      if (cert && cert->kind == Certificate::Kind::Matching) tracked = cert->data;
      return check_perfect_matching(m, cfg.n, tracked);
    }
    case GameKind::Hamiltonicity: {
      std::span<const int> tracked;
      if (cert && cert->kind == Certificate::Kind::Cycle) tracked = cert->data;
      return check_hamilton(m, cfg.n, tracked);
    }
  }
  return false;
}

inline int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

inline std::uint64_t reservoir_priority(std::uint64_t seed) { return splitmix64(seed ^ 0x5eed5eed5eed5eedULL); }

struct WorkerResult {
  AggregateStats stats;
  std::vector<std::pair<std::uint64_t, TrialRecord>> sample;
};

inline void offer_sample(WorkerResult& w, std::size_t cap, std::uint64_t prio, const TrialRecord& r) {
  auto cmp = [](const auto& x, const auto& y) { return x.first < y.first; };
  if (w.sample.size() < cap) {
    w.sample.emplace_back(prio, r);
    std::push_heap(w.sample.begin(), w.sample.end(), cmp);
  } else if (cap > 0 && prio < w.sample.front().first) {
    std::pop_heap(w.sample.begin(), w.sample.end(), cmp);
    w.sample.back() = {prio, r};
    std::push_heap(w.sample.begin(), w.sample.end(), cmp);
  }
}

}  // namespace detail

/// Runs `trials` independent games. Trial i is seeded with
/// mix_seed(master_seed, i), so results do not depend on the worker count.
inline TrialRun run_trials(const GameConfig& base, const std::string& maker, const std::string& breaker,
                           std::int64_t trials, std::uint64_t master_seed, const TrialOptions& opt = {}) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  base.validate();
  // Surface unknown names before any thread starts.
  (void)make_maker(maker, base, opt.sampling);
  (void)make_breaker(breaker, base);

  const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(std::min<std::int64_t>(trials, 1024))));
  TrialRun run;
  if (opt.keep_records) run.records.resize(static_cast<std::size_t>(trials));
  std::vector<detail::WorkerResult> partial(static_cast<std::size_t>(workers));
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::int64_t error_index = trials;
  std::mutex error_mu;

  auto work = [&](int w) {
    auto& mine = partial[static_cast<std::size_t>(w)];
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= trials) return;
      GameConfig cfg = base;
      cfg.seed = mix_seed(master_seed, static_cast<std::uint64_t>(i));
      try {
        SeededRandom rng(cfg.seed);
        Game game(cfg, make_maker(maker, cfg, opt.sampling), make_breaker(breaker, cfg));
        game.run(rng);
        const std::uint64_t prio = detail::reservoir_priority(cfg.seed);
        const bool sampled = opt.reservoir > 0 &&
                             (mine.sample.size() < opt.reservoir || prio < mine.sample.front().first);
        TrialRecord rec = game.record(opt.verify_wins || sampled, sampled || (opt.keep_records && opt.keep_transcripts));
        mine.stats.add(rec);
        if (opt.verify_wins && rec.reason == Reason::MakerWin &&
            !confirm_maker_win(cfg, *rec.maker_edges, game.maker().certificate()))
          ++mine.stats.certificate_failures;
        if (sampled) detail::offer_sample(mine, opt.reservoir, prio, rec);
        if (opt.keep_records) {
          // Stored records must not depend on which worker sampled them.
          rec.maker_edges.reset();
          if (!opt.keep_transcripts) rec.transcript.reset();
          run.records[static_cast<std::size_t>(i)] = std::move(rec);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mu);
        if (i < error_index) {
          error_index = i;
          error = std::make_exception_ptr(TrialError(
              std::string(e.what()) + " (trial " + std::to_string(i) + ", seed " + std::to_string(cfg.seed) + ")",
              cfg.seed, i));
        }
        stop.store(true);
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::pair<std::uint64_t, TrialRecord>> sample;
  for (auto& p : partial) {
    run.stats.merge(p.stats);
    for (auto& s : p.sample) sample.push_back(std::move(s));
  }
  std::sort(sample.begin(), sample.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second.seed < y.second.seed;
  });
  if (sample.size() > opt.reservoir) sample.resize(opt.reservoir);
  for (auto& s : sample) run.reservoir.push_back(std::move(s.second));
  run.stats.finalize(opt.z);
  return run;
}

}  // namespace phantom
