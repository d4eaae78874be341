// phantom: command-line front end for the Maker-PhantomBreaker simulator.
//
//   phantom simulate --game hamiltonicity --n 200 --a 1 --b 1 --maker hamilton --breaker random --trials 100
//   phantom sweep --game mindegree --n 1000 --b 1..6 --maker mindeg-large --breaker star-phases --trials 200
//   phantom exact --game connectivity --n 4 --maker random --breaker random
//   phantom verify --scale quick
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error,
// 3 resource refusal.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phantom/acceptance.hpp"
#include "phantom/experiment.hpp"
#include "phantom/fixtures.hpp"
#include "phantom/oracle.hpp"
#include "phantom/results.hpp"
#include "phantom/sweep.hpp"

namespace {

using namespace phantom;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;

int env_workers() {
  const char* env = std::getenv("PHANTOM_WORKERS");
  if (!env || !*env) return default_workers();
  try {
    std::size_t used = 0;
    const int w = std::stoi(env, &used);
    if (used != std::string(env).size() || w < 1) throw std::invalid_argument(env);
    return w;
  } catch (const std::exception&) {
    throw ConfigError(std::string("PHANTOM_WORKERS must be a positive integer, got '") + env + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Reads a flat key = value file into "--key=value" tokens.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    for (char& c : key)
      if (c == '_') c = '-';
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

/// Splices the config file's settings in front of the command-line flags so
/// that flags given on the command line win.
std::vector<std::string> merged_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  const auto file = config_tokens(path);
  // The subcommand comes first; file settings go right after it.
  std::size_t at = 0;
  while (at < args.size() && !args[at].empty() && args[at][0] == '-') ++at;
  if (at < args.size()) ++at;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), file.begin(), file.end());
  return args;
}

GameKind require_game(const std::string& s) {
  const auto g = parse_game(s);
  if (!g) throw ConfigError("unknown game '" + s + "' (" + join_names(kGameNames) + ")");
  return *g;
}

void require_strategies(const std::string& maker, const std::string& breaker) {
  if (!is_maker_name(maker))
    throw ConfigError("unknown maker strategy '" + maker + "'; known: " + join_names(kMakerNames));
  if (!is_breaker_name(breaker))
    throw ConfigError("unknown breaker strategy '" + breaker + "'; known: " + join_names(kBreakerNames));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct GameFlags {
  std::string game;
  int n = 0, a = 1, b = 1, k = 1;
  std::string maker, breaker;
  std::string sampling = "knowledge-aware";
  std::int64_t stall_cap = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--game", game, "mindegree | connectivity | pm | hamiltonicity");
    cmd->add_option("--n", n, "number of vertices");
    cmd->add_option("--a", a, "Maker bias");
    cmd->add_option("--b", b, "Breaker bias");
    cmd->add_option("--k", k, "degree target for the mindegree game");
    cmd->add_option("--maker", maker, "Maker strategy");
    cmd->add_option("--breaker", breaker, "Breaker strategy");
    cmd->add_option("--sampling", sampling, "knowledge-aware | strict");
    cmd->add_option("--stall-cap", stall_cap, "round limit (default n^2)");
  }

  GameConfig config() const {
    if (game.empty()) throw ConfigError("--game is required");
    if (n == 0) throw ConfigError("--n is required");
    if (maker.empty()) throw ConfigError("--maker is required");
    if (breaker.empty()) throw ConfigError("--breaker is required");
    require_strategies(maker, breaker);
    GameConfig c;
    c.game = require_game(game);
    c.n = n;
    c.a = a;
    c.b = b;
    c.k = k;
    c.stall_cap = stall_cap;
    c.validate();
    return c;
  }
};

int cmd_simulate(const GameFlags& g, std::int64_t trials, std::uint64_t seed, int workers, const std::string& out,
                 bool records, bool transcripts) {
  RunConfig rc;
  rc.game = g.config();
  rc.maker = g.maker;
  rc.breaker = g.breaker;
  rc.trials = trials;
  rc.seed = seed;
  rc.sampling = parse_sampling(g.sampling);
  if (trials < 1) throw ConfigError("--trials must be at least 1");
  TrialOptions o;
  o.workers = workers;
  o.sampling = rc.sampling;
  o.keep_records = records;
  const TrialRun run = run_trials(rc.game, rc.maker, rc.breaker, trials, seed, o);
  std::string text = run_json(rc, run, records);
  if (transcripts) {
    text.pop_back();  // newline
    text.pop_back();  // closing brace
    text += ",\"transcripts\":[";
    for (std::size_t i = 0; i < run.reservoir.size(); ++i) text += (i ? "," : "") + record_json(run.reservoir[i]);
    text += "]}\n";
  }
  write_text(out, text);
  return kExitOk;
}

struct SweepFlags {
  std::string games, ns, as = "1", bs, ks = "1", makers, breakers;
  std::string sampling = "knowledge-aware";
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::int64_t budget = 10'000'000;
  std::int64_t stall_cap = 0;
  std::string out;
  bool resume = false;
};

int cmd_sweep(const SweepFlags& f, int workers) {
  if (f.games.empty() || f.ns.empty() || f.bs.empty() || f.makers.empty() || f.breakers.empty())
    throw ConfigError("sweep needs --game, --n, --b, --maker and --breaker");
  SweepSpec spec;
  for (const auto& g : split_list(f.games)) spec.games.push_back(require_game(g));
  spec.ns = parse_int_grid(f.ns);
  spec.as = parse_int_grid(f.as);
  spec.bs = parse_int_grid(f.bs);
  spec.ks = parse_int_grid(f.ks);
  spec.makers = split_list(f.makers);
  spec.breakers = split_list(f.breakers);
  for (const auto& m : spec.makers)
    if (!is_maker_name(m)) throw ConfigError("unknown maker strategy '" + m + "'; known: " + join_names(kMakerNames));
  for (const auto& b : spec.breakers)
    if (!is_breaker_name(b)) throw ConfigError("unknown breaker strategy '" + b + "'; known: " + join_names(kBreakerNames));
  spec.trials = f.trials;
  spec.master_seed = f.seed;
  spec.budget = f.budget;
  spec.sampling = parse_sampling(f.sampling);
  spec.stall_cap = f.stall_cap;
  (void)expand_sweep(spec);  // validate and check the budget before writing anything

  TrialOptions o;
  o.workers = workers;
  o.reservoir = 0;
  if (f.out.empty() || f.out == "-") {
    run_sweep(spec, std::cout, o);
    return kExitOk;
  }
  std::set<std::string> done;
  bool header = true;
  if (f.resume) {
    std::ifstream prev(f.out);
    if (prev) {
      done = completed_cells(prev);
      prev.clear();
      prev.seekg(0);
      std::string first;
      header = !std::getline(prev, first);
    }
  }
  std::ofstream out(f.out, f.resume ? std::ios::app : std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + f.out);
  run_sweep(spec, out, o, done, header);
  return kExitOk;
}

int cmd_exact(const GameFlags& g, const std::string& fixture_file, bool no_memo, double max_estimate) {
  const GameConfig cfg = g.config();
  OracleOptions o;
  o.memoize = !no_memo;
  o.max_estimate = max_estimate;
  o.sampling = parse_sampling(g.sampling);
  const ExactResult r = exact_win_probability_detailed(cfg, g.maker, g.breaker, o);
  std::cout << to_fraction(r.probability) << "\n" << format_double(static_cast<double>(r.probability)) << "\n";
  if (!fixture_file.empty()) {
    std::ostringstream rec;
    rec << to_string(cfg.game) << ' ' << cfg.n << ' ' << cfg.a << ' ' << cfg.b << ' ' << cfg.k << ' ' << g.maker << ' '
        << g.breaker << ' ' << to_string(o.sampling);
    const std::string key = rec.str();
    rec << ' ' << to_fraction(r.probability) << " derived";
    std::vector<std::string> lines;
    bool replaced = false;
    {
      std::ifstream in(fixture_file);
      std::string line;
      while (std::getline(in, line)) {
        if (line.rfind(key + ' ', 0) == 0) {
          lines.push_back(rec.str());
          replaced = true;
        } else {
          lines.push_back(line);
        }
      }
    }
    if (!replaced) lines.push_back(rec.str());
    std::ofstream out(fixture_file, std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + fixture_file);
    for (const auto& l : lines) out << l << '\n';
  }
  return kExitOk;
}

int cmd_verify(const std::string& scale, int workers, const std::vector<int>& only, double bound_scale, bool verbose,
               const std::string& fixture_file) {
  const auto s = parse_scale(scale);
  if (!s) throw ConfigError("unknown scale '" + scale + "' (quick | full)");
  AcceptanceOptions opt;
  opt.scale = *s;
  opt.workers = workers;
  opt.bound_scale = bound_scale;
  if (!fixture_file.empty()) opt.fixture_file = fixture_file;
  if (verbose) opt.log = [](const std::string& line) { std::cout << "  " << line << std::endl; };
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  AcceptanceSuite suite(opt);
  int passed = 0;
  for (int id : ids) {
    const auto r = suite.run(id);
    std::cout << format_result_line(r) << std::endl;
    passed += r.pass;
  }
  std::cout << passed << "/" << ids.size() << " criteria passed" << std::endl;
  return passed == static_cast<int>(ids.size()) ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for biased Maker-PhantomBreaker games on complete graphs"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  int workers = 0;
  auto add_workers = [&](CLI::App* cmd) {
    cmd->add_option("--workers", workers, "worker threads (default: PHANTOM_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  GameFlags game;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::string out;
  bool records = false, transcripts = false;
  auto* simulate = app.add_subcommand("simulate", "run seeded Monte Carlo trials and print JSON");
  game.add(simulate);
  simulate->add_option("--trials", trials, "number of games");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--out", out, "output file (default stdout)");
  simulate->add_flag("--records", records, "include one record per trial");
  simulate->add_flag("--transcripts", transcripts, "include the sampled transcripts");
  add_workers(simulate);

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and write CSV");
  sweep->add_option("--game", sweep_flags.games, "comma-separated games");
  sweep->add_option("--n", sweep_flags.ns, "grid such as 200,400 or 100..120");
  sweep->add_option("--a", sweep_flags.as, "Maker bias grid");
  sweep->add_option("--b", sweep_flags.bs, "Breaker bias grid");
  sweep->add_option("--k", sweep_flags.ks, "degree target grid");
  sweep->add_option("--maker", sweep_flags.makers, "comma-separated Maker strategies");
  sweep->add_option("--breaker", sweep_flags.breakers, "comma-separated Breaker strategies");
  sweep->add_option("--sampling", sweep_flags.sampling, "knowledge-aware | strict");
  sweep->add_option("--trials", sweep_flags.trials, "games per cell");
  sweep->add_option("--seed", sweep_flags.seed, "master seed");
  sweep->add_option("--budget", sweep_flags.budget, "maximum total games");
  sweep->add_option("--stall-cap", sweep_flags.stall_cap, "round limit (default n^2)");
  sweep->add_option("--out", sweep_flags.out, "CSV file (default stdout)");
  sweep->add_flag("--resume", sweep_flags.resume, "skip cells already in --out and append the rest");
  add_workers(sweep);

  GameFlags exact_game;
  std::string fixture_file;
  bool no_memo = false;
  double max_estimate = 1e8;
  auto* exact = app.add_subcommand("exact", "exact Maker win probability on a small board");
  exact_game.add(exact);
  exact->add_option("--fixture-file", fixture_file, "add or update the result in this fixture file");
  exact->add_flag("--no-memo", no_memo, "disable memoization");
  exact->add_option("--max-estimate", max_estimate, "refuse boards whose estimated size exceeds this");

  std::string scale = "quick";
  std::vector<int> only;
  double bound_scale = 1.0;
  bool verbose = false;
  std::string verify_fixtures;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--scale", scale, "quick | full");
  verify->add_option("--only", only, "run only these criteria")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',')
      ->check(CLI::Range(1, kCriteria));
  verify->add_option("--bound-scale", bound_scale, "scale the star-phase bound (testing only)")->group("");
  verify->add_option("--fixture-file", verify_fixtures, "exact fixtures to check against");
  verify->add_flag("-v,--verbose", verbose, "print progress");
  add_workers(verify);

  try {
    auto args = merged_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (workers == 0) workers = env_workers();
    if (*simulate) return cmd_simulate(game, trials, seed, workers, out, records, transcripts);
    if (*sweep) return cmd_sweep(sweep_flags, workers);
    if (*exact) return cmd_exact(exact_game, fixture_file, no_memo, max_estimate);
    if (*verify) return cmd_verify(scale, workers, only, bound_scale, verbose, verify_fixtures);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
