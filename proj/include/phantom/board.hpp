#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phantom/bits.hpp"
#include "phantom/config.hpp"
#include "phantom/errors.hpp"

namespace phantom {

enum class Owner : std::uint8_t { Free, Maker, Breaker };
enum class Actor : std::uint8_t { Maker, Breaker };
enum class MoveOutcome : std::uint8_t { Claimed, Failure };

struct TranscriptEntry {
  Actor actor;
  Edge edge;
  MoveOutcome outcome;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

/// Append-only key used for memoization and state comparison.
using StateKey = std::vector<std::uint64_t>;

/// Everything Maker can know: her own edges and the Breaker edges she has
/// bumped into.
class MakerKnowledge {
 public:
  MakerKnowledge() = default;
  explicit MakerKnowledge(int n)
      : n_(n), mine_(n), revealed_(n), deg_mine_(n, 0), deg_revealed_(n, 0) {
    std::vector<std::int64_t> upper(n);
    for (int u = 0; u < n; ++u) upper[u] = n - 1 - u;
    unknown_upper_ = RowRankIndex(upper);
  }

  int n() const noexcept { return n_; }
  bool owns(Edge e) const noexcept { return mine_.test(e); }
  bool revealed(Edge e) const noexcept { return revealed_.test(e); }
  bool known_unavailable(Edge e) const noexcept { return owns(e) || revealed(e); }
  int degree(int v) const noexcept { return deg_mine_[v]; }
  int revealed_degree(int v) const noexcept { return deg_revealed_[v]; }
  std::int64_t edge_count() const noexcept { return edges_; }
  std::int64_t revealed_count() const noexcept { return revealed_edges_; }
  std::int64_t unknown_count() const noexcept { return unknown_upper_.total(); }
  const BitMatrix& mine() const noexcept { return mine_; }
  const BitMatrix& revealed_matrix() const noexcept { return revealed_; }

  /// The r-th edge (canonical order) not known to Maker as hers or Breaker's.
  Edge unknown_edge(std::int64_t r) const {
    const int u = unknown_upper_.locate(r);
    const auto m = mine_.row(u);
    const auto x = revealed_.row(u);
    const int v = select_bit(n_, u + 1, static_cast<int>(r),
                             [&](int i) { return ~(m[i] | x[i]); });
    if (v < 0) throw ContractError("unknown_edge rank out of range");
    return {u, v};
  }

  void add_mine(Edge e) {
    mine_.set(e);
    ++deg_mine_[e.u];
    ++deg_mine_[e.v];
    ++edges_;
    unknown_upper_.add(e.u, -1);
  }
  void add_revealed(Edge e) {
    if (revealed_.test(e)) return;
    revealed_.set(e);
    ++deg_revealed_[e.u];
    ++deg_revealed_[e.v];
    ++revealed_edges_;
    unknown_upper_.add(e.u, -1);
  }

  void encode(StateKey& key) const {
    key.insert(key.end(), mine_.raw().begin(), mine_.raw().end());
    key.insert(key.end(), revealed_.raw().begin(), revealed_.raw().end());
  }

 private:
  int n_ = 0;
  BitMatrix mine_;
  BitMatrix revealed_;
  std::vector<int> deg_mine_;
  std::vector<int> deg_revealed_;
  std::int64_t edges_ = 0;
  std::int64_t revealed_edges_ = 0;
  RowRankIndex unknown_upper_;
};

/// Maker's window onto the game. It carries public parameters and her own
/// knowledge only; free edges and unrevealed Breaker edges are not reachable
/// through it.
class MakerView {
 public:
  MakerView(const GameConfig& cfg, const MakerKnowledge& know, std::int64_t round, int budget_left)
      : cfg_(&cfg), know_(&know), round_(round), budget_left_(budget_left) {}

  int n() const noexcept { return cfg_->n; }
  int a() const noexcept { return cfg_->a; }
  int b() const noexcept { return cfg_->b; }
  int k() const noexcept { return cfg_->k; }
  GameKind game() const noexcept { return cfg_->game; }
  std::int64_t round() const noexcept { return round_; }
  int attempt_budget_left() const noexcept { return budget_left_; }
  const MakerKnowledge& knowledge() const noexcept { return *know_; }

  bool owns(Edge e) const noexcept { return know_->owns(e); }
  bool revealed(Edge e) const noexcept { return know_->revealed(e); }
  bool known_unavailable(Edge e) const noexcept { return know_->known_unavailable(e); }
  int degree(int v) const noexcept { return know_->degree(v); }

 private:
  const GameConfig* cfg_;
  const MakerKnowledge* know_;
  std::int64_t round_;
  int budget_left_;
};

/// The full game position: ownership of every edge of K_n plus round
/// counters and the transcript of all moves.
class BoardState {
 public:
  BoardState() = default;

  /// Fresh board: all C(n,2) edges free, round 1.
  explicit BoardState(const GameConfig& cfg)
      : cfg_(cfg), maker_(cfg.n), breaker_(cfg.n), deg_breaker_(cfg.n, 0) {
    cfg_.validate();
    std::vector<std::int64_t> upper(cfg.n);
    for (int u = 0; u < cfg.n; ++u) upper[u] = cfg.n - 1 - u;
    free_upper_ = RowRankIndex(upper);
  }

  const GameConfig& config() const noexcept { return cfg_; }
  int n() const noexcept { return cfg_.n; }
  std::int64_t round() const noexcept { return round_; }
  int maker_attempts_this_round() const noexcept { return attempts_; }
  const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }
  const MakerKnowledge& maker_knowledge() const noexcept { return maker_; }
  const BitMatrix& breaker_edges() const noexcept { return breaker_; }

  Owner owner(Edge e) const noexcept {
    if (maker_.owns(e)) return Owner::Maker;
    if (breaker_.test(e)) return Owner::Breaker;
    return Owner::Free;
  }
  bool is_free(Edge e) const noexcept { return owner(e) == Owner::Free; }
  bool known_breaker(Edge e) const noexcept { return maker_.revealed(e); }

  int maker_degree(int v) const noexcept { return maker_.degree(v); }
  int breaker_degree(int v) const noexcept { return deg_breaker_[v]; }
  int free_degree(int v) const noexcept {
    return cfg_.n - 1 - maker_.degree(v) - deg_breaker_[v];
  }
  std::int64_t maker_edge_count() const noexcept { return maker_.edge_count(); }
  std::int64_t breaker_edge_count() const noexcept { return breaker_count_; }
  std::int64_t free_count() const noexcept { return free_upper_.total(); }

  /// The r-th free edge in canonical order.
  Edge free_edge(std::int64_t r) const {
    const int u = free_upper_.locate(r);
    const auto m = maker_.mine().row(u);
    const auto bk = breaker_.row(u);
    const int v = select_bit(cfg_.n, u + 1, static_cast<int>(r),
                             [&](int i) { return ~(m[i] | bk[i]); });
    if (v < 0) throw ContractError("free_edge rank out of range");
    return {u, v};
  }

  /// The r-th free neighbour of v in increasing id order.
  int free_neighbor(int v, int r) const {
    const auto m = maker_.mine().row(v);
    const auto bk = breaker_.row(v);
    const int w = select_bit(cfg_.n, 0, r, [&](int i) {
      std::uint64_t word = ~(m[i] | bk[i]);
      if (i == (v >> 6)) word &= ~(std::uint64_t{1} << (v & 63));
      return word;
    });
    if (w < 0) throw ContractError("free_neighbor rank out of range");
    return w;
  }

  MakerView maker_view() const noexcept {
    return MakerView(cfg_, maker_, round_, cfg_.a - attempts_);
  }

  /// One Maker attempt. Costs a move whether or not it succeeds.
  MoveOutcome attempt_claim_maker(Edge e) {
    check_edge(e);
    if (maker_.owns(e)) throw ContractError("Maker submitted an edge she already owns");
    if (attempts_ >= cfg_.a) throw ContractError("Maker attempt budget exhausted for this round");
    ++attempts_;
    MoveOutcome out;
    if (breaker_.test(e)) {
      maker_.add_revealed(e);
      out = MoveOutcome::Failure;
    } else {
      maker_.add_mine(e);
      free_upper_.add(e.u, -1);
      out = MoveOutcome::Claimed;
    }
    transcript_.push_back({Actor::Maker, e, out});
    return out;
  }

  void claim_breaker(Edge e) {
    check_edge(e);
    if (!is_free(e)) throw ContractError("Breaker claimed a non-free edge");
    breaker_.set(e);
    ++deg_breaker_[e.u];
    ++deg_breaker_[e.v];
    ++breaker_count_;
    free_upper_.add(e.u, -1);
    transcript_.push_back({Actor::Breaker, e, MoveOutcome::Claimed});
  }

  void next_round() noexcept {
    ++round_;
    attempts_ = 0;
  }

  /// Full O(n^2) consistency audit; used by tests and debug builds.
  bool check_invariants() const {
    const int n = cfg_.n;
    std::int64_t mk = 0, bk = 0, fr = 0;
    for (int u = 0; u < n; ++u) {
      int dm = 0, db = 0;
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        const Edge e{u, v};
        const bool m = maker_.owns(e), br = breaker_.test(e);
        if (m && br) return false;
        if (maker_.revealed(e) && !br) return false;
        dm += m;
        db += br;
        if (u < v) {
          mk += m;
          bk += br;
          fr += !(m || br);
        }
      }
      if (dm != maker_.degree(u) || db != deg_breaker_[u]) return false;
    }
    return mk == maker_.edge_count() && bk == breaker_count_ && fr == free_count() &&
           mk + bk + fr == cfg_.edge_count();
  }

  void encode(StateKey& key) const {
    maker_.encode(key);
    key.insert(key.end(), breaker_.raw().begin(), breaker_.raw().end());
    key.push_back(static_cast<std::uint64_t>(round_));
    key.push_back(static_cast<std::uint64_t>(attempts_));
  }

 private:
  void check_edge(Edge e) const {
    if (e.u < 0 || e.v >= cfg_.n || e.u == e.v)
      throw ContractError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") is not an edge of K_n");
  }

  GameConfig cfg_;
  MakerKnowledge maker_;
  BitMatrix breaker_;
  std::vector<int> deg_breaker_;
  std::int64_t breaker_count_ = 0;
  RowRankIndex free_upper_;
  std::int64_t round_ = 1;
  int attempts_ = 0;
  std::vector<TranscriptEntry> transcript_;
};

inline BoardState new_game(const GameConfig& cfg) { return BoardState(cfg); }

}  // namespace phantom
