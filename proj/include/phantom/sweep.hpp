#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phantom/config.hpp"
#include "phantom/errors.hpp"
#include "phantom/experiment.hpp"
#include "phantom/results.hpp"

namespace phantom {

/// Parses "3", "1,2,5", "1..6" or mixtures like "1..3,8".
inline std::vector<int> parse_int_grid(std::string_view text) {
  std::vector<int> out;
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
      throw ConfigError("malformed grid value '" + std::string(s) + "' in '" + std::string(text) + "'");
    return v;
  };
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(start, comma - start);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const int lo = number(item.substr(0, dots));
      const int hi = number(item.substr(dots + 2));
      if (hi < lo) throw ConfigError("empty range '" + std::string(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(number(item));
    }
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(start, comma - start));
    if (item.empty()) throw ConfigError("empty entry in list '" + std::string(text) + "'");
    out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

struct SweepSpec {
  std::vector<GameKind> games;
  std::vector<int> ns, as, bs, ks;
  std::vector<std::string> makers, breakers;
  std::int64_t trials = 100;
  std::uint64_t master_seed = 0;
  /// Refuse sweeps with more than this many trials in total.
  std::int64_t budget = 10'000'000;
  Sampling sampling = Sampling::KnowledgeAware;
  std::int64_t stall_cap = 0;
};

struct SweepCell {
  GameConfig cfg;
  std::string maker;
  std::string breaker;

  std::string key() const {
    std::ostringstream o;
    o << to_string(cfg.game) << ',' << cfg.n << ',' << cfg.a << ',' << cfg.b << ',' << cfg.k << ',' << maker << ','
      << breaker;
    return o.str();
  }
};

/// Master seed of one cell: depends on the cell, not its position in the grid.
inline std::uint64_t cell_seed(std::uint64_t master, const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) h = (h ^ c) * 0x100000001b3ULL;
  return mix_seed(master, h);
}

/// Expands and validates the grid. Throws ConfigError on any invalid cell and
/// RefusalError when the total trial count exceeds the budget.
inline std::vector<SweepCell> expand_sweep(const SweepSpec& spec) {
  if (spec.games.empty() || spec.ns.empty() || spec.as.empty() || spec.bs.empty() || spec.ks.empty() ||
      spec.makers.empty() || spec.breakers.empty())
    throw ConfigError("every sweep grid must be nonempty");
  if (spec.trials < 1) throw ConfigError("trials must be at least 1");
  std::vector<SweepCell> cells;
  for (GameKind g : spec.games)
    for (int n : spec.ns)
      for (int a : spec.as)
        for (int b : spec.bs)
          for (int k : spec.ks)
            for (const auto& m : spec.makers)
              for (const auto& br : spec.breakers) {
                SweepCell c;
                c.cfg.game = g;
                c.cfg.n = n;
                c.cfg.a = a;
                c.cfg.b = b;
                c.cfg.k = k;
                c.cfg.stall_cap = spec.stall_cap;
                c.maker = m;
                c.breaker = br;
                c.cfg.validate();
                (void)make_maker(m, c.cfg, spec.sampling);
                (void)make_breaker(br, c.cfg);
                cells.push_back(std::move(c));
              }
  const double total = static_cast<double>(cells.size()) * static_cast<double>(spec.trials);
  if (total > static_cast<double>(spec.budget))
    throw RefusalError("sweep needs " + std::to_string(static_cast<std::int64_t>(total)) +
                           " trials, over the budget of " + std::to_string(spec.budget),
                       total);
  return cells;
}

inline std::string sweep_row(const SweepCell& c, const AggregateStats& s) {
  std::ostringstream o;
  o << c.key() << ',' << s.trials << ',' << s.maker_wins << ',' << format_double(s.maker_frequency) << ','
    << format_double(s.wilson_low) << ',' << format_double(s.wilson_high) << ',' << format_double(s.mean_rounds);
  return o.str();
}

/// Keys of the cells already present in a sweep CSV (for resuming).
inline std::set<std::string> completed_cells(std::istream& in) {
  std::set<std::string> done;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      if (line == kSweepHeader) continue;
    }
    std::size_t pos = 0;
    for (int i = 0; i < 7 && pos != std::string::npos; ++i) pos = line.find(',', pos + (i ? 1 : 0));
    if (pos != std::string::npos) done.insert(line.substr(0, pos));
  }
  return done;
}

/// Runs every cell not listed in `skip`, writing one CSV row per cell and
/// flushing after each. Writes the header when `header` is set.
inline std::int64_t run_sweep(const SweepSpec& spec, std::ostream& out, const TrialOptions& opt,
                              const std::set<std::string>& skip = {}, bool header = true,
                              const std::function<void(const SweepCell&, const AggregateStats&)>& on_cell = {}) {
  const auto cells = expand_sweep(spec);
  if (header) out << kSweepHeader << '\n' << std::flush;
  std::int64_t ran = 0;
  TrialOptions o = opt;
  o.sampling = spec.sampling;
  o.keep_records = false;
  for (const auto& c : cells) {
    const std::string key = c.key();
    if (skip.count(key)) continue;
    const TrialRun run = run_trials(c.cfg, c.maker, c.breaker, spec.trials, cell_seed(spec.master_seed, key), o);
    out << sweep_row(c, run.stats) << '\n' << std::flush;
    if (on_cell) on_cell(c, run.stats);
    ++ran;
  }
  return ran;
}

}  // namespace phantom
