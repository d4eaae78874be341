#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phantom/board.hpp"
#include "phantom/config.hpp"
#include "phantom/random.hpp"
#include "phantom/strategy.hpp"

namespace phantom {

struct IsolationReport {
  bool identical = true;
  std::int64_t maker_moves = 0;
  /// Breaker edges owned on one board but not the other, at the end.
  std::int64_t differing_breaker_edges = 0;
};

namespace detail {

struct MakerTrace {
  std::vector<Edge> edges;
  std::vector<MoveOutcome> outcomes;
  MakerMove::Kind last = MakerMove::Kind::Attempt;
  friend bool operator==(const MakerTrace&, const MakerTrace&) = default;
};

/// Drives one Maker strategy on a bare board. `breaker_claims(round, board)`
/// returns the edges Breaker takes after Maker's turn in that round.
template <class Claims>
MakerTrace drive_maker(const GameConfig& cfg, const std::string& maker, Sampling sampling, std::uint64_t seed,
                       BoardState& board, Claims&& breaker_claims) {
  Maker m = make_maker(maker, cfg, sampling);
  SeededRandom rng(seed);
  MakerTrace trace;
  const std::int64_t limit = cfg.effective_stall_cap();
  while (board.round() <= limit) {
    for (int t = 0; t < cfg.a; ++t) {
      if (board.free_count() == 0) return trace;
      const MakerMove mv = m.next(board.maker_view(), rng);
      if (mv.kind != MakerMove::Kind::Attempt) {
        trace.last = mv.kind;
        return trace;
      }
      const MoveOutcome out = board.attempt_claim_maker(mv.edge);
      m.on_outcome(board.maker_view(), mv.edge, out);
      trace.edges.push_back(mv.edge);
      trace.outcomes.push_back(out);
    }
    for (const Edge& e : breaker_claims(board.round(), board)) board.claim_breaker(e);
    board.next_round();
  }
  return trace;
}

}  // namespace detail

/// Plays Maker twice from the same seed against two Breakers whose claims
/// differ only on edges Maker never tries. Maker's moves must match exactly.
inline IsolationReport phantom_isolation_run(const GameConfig& cfg, const std::string& maker, std::uint64_t seed,
                                             Sampling sampling = Sampling::KnowledgeAware) {
  const std::uint64_t maker_seed = mix_seed(seed, 1);

  // Board A: Breaker takes uniform free edges.
  std::vector<std::vector<Edge>> claims_a;
  SeededRandom rb(mix_seed(seed, 2));
  BoardState a(cfg);
  const detail::MakerTrace ta = detail::drive_maker(cfg, maker, sampling, maker_seed, a, [&](std::int64_t, const BoardState& s) {
    std::vector<Edge> out;
    BoardState scratch = s;
    const std::int64_t count = std::min<std::int64_t>(cfg.b, scratch.free_count());
    for (std::int64_t c = 0; c < count; ++c) {
      const Edge e = scratch.free_edge(static_cast<std::int64_t>(rb.uniform_index(static_cast<std::uint64_t>(scratch.free_count()))));
      scratch.claim_breaker(e);
      out.push_back(e);
    }
    claims_a.push_back(out);
    return out;
  });

  BitMatrix tried(cfg.n);
  for (const Edge& e : ta.edges) tried.set(e);

  // Board B: same claims on edges Maker tries, different ones elsewhere.
  SeededRandom rs(mix_seed(seed, 3));
  BoardState b(cfg);
  const detail::MakerTrace tb = detail::drive_maker(cfg, maker, sampling, maker_seed, b, [&](std::int64_t round, const BoardState& s) {
    std::vector<Edge> out;
    if (round - 1 >= static_cast<std::int64_t>(claims_a.size())) return out;
    BoardState scratch = s;
    for (const Edge& e : claims_a[static_cast<std::size_t>(round - 1)]) {
      Edge pick = e;
      if (!tried.test(e) || !scratch.is_free(e)) {
        std::vector<Edge> options;
        for (std::int64_t r = 0; r < scratch.free_count(); ++r) {
          const Edge f = scratch.free_edge(r);
          if (!tried.test(f)) options.push_back(f);
        }
        if (!options.empty()) pick = options[rs.uniform_index(options.size())];
        else if (!scratch.is_free(e)) pick = scratch.free_edge(0);
      }
      scratch.claim_breaker(pick);
      out.push_back(pick);
    }
    return out;
  });

  IsolationReport rep;
  rep.identical = ta == tb;
  rep.maker_moves = static_cast<std::int64_t>(ta.edges.size());
  for (int u = 0; u < cfg.n; ++u)
    for (int v = u + 1; v < cfg.n; ++v)
      if (a.breaker_edges().test(u, v) != b.breaker_edges().test(u, v)) ++rep.differing_breaker_edges;
  return rep;
}

}  // namespace phantom
