#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "phantom/breaker.hpp"
#include "phantom/config.hpp"
#include "phantom/errors.hpp"
#include "phantom/maker_conn.hpp"
#include "phantom/maker_hamilton.hpp"
#include "phantom/maker_mindeg.hpp"
#include "phantom/maker_pm.hpp"

namespace phantom {

inline constexpr std::array<std::string_view, 8> kMakerNames = {
    "mindeg-large", "mindeg-small", "pm-large", "pm-small", "conn-large", "conn-small", "hamilton", "random"};
inline constexpr std::array<std::string_view, 3> kBreakerNames = {"star-phases", "single-star", "random"};

template <std::size_t N>
std::string join_names(const std::array<std::string_view, N>& names) {
  std::string out;
  for (auto n : names) {
    if (!out.empty()) out += " | ";
    out += n;
  }
  return out;
}

inline bool is_maker_name(std::string_view s) {
  for (auto n : kMakerNames)
    if (n == s) return true;
  return false;
}
inline bool is_breaker_name(std::string_view s) {
  for (auto n : kBreakerNames)
    if (n == s) return true;
  return false;
}

/// The game a Maker strategy is built to win, if any.
inline std::optional<GameKind> native_game(std::string_view maker) {
  if (maker == "mindeg-large" || maker == "mindeg-small") return GameKind::MinDegree;
  if (maker == "pm-large" || maker == "pm-small") return GameKind::PerfectMatching;
  if (maker == "conn-large" || maker == "conn-small") return GameKind::Connectivity;
  if (maker == "hamilton") return GameKind::Hamiltonicity;
  return std::nullopt;
}

/// Type-erased Maker strategy with value semantics (copyable for the oracle).
class Maker {
 public:
  using Impl = std::variant<MindegLargeMaker, MindegSmallMaker, PerfectMatchingMaker, ConnLargeMaker, ConnSmallMaker,
                            HamiltonMaker, RandomMaker>;

  Maker(std::string name, Impl impl) : name_(std::move(name)), impl_(std::move(impl)) {}

  const std::string& name() const noexcept { return name_; }

  MakerMove next(const MakerView& view, RandomSource& rng) {
    return std::visit([&](auto& s) { return s.next(view, rng); }, impl_);
  }
  void on_outcome(const MakerView& view, Edge e, MoveOutcome out) {
    std::visit([&](auto& s) { s.on_outcome(view, e, out); }, impl_);
  }
  const Certificate* certificate() const noexcept {
    return std::visit([](const auto& s) { return s.certificate(); }, impl_);
  }
  void encode(StateKey& key) const {
    key.push_back(impl_.index());
    std::visit([&](const auto& s) { s.encode(key); }, impl_);
  }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&impl_);
  }

 private:
  std::string name_;
  Impl impl_;
};

class Breaker {
 public:
  using Impl = std::variant<StarPhasesBreaker, SingleStarBreaker, RandomBreaker>;

  Breaker(std::string name, Impl impl) : name_(std::move(name)), impl_(std::move(impl)) {}

  const std::string& name() const noexcept { return name_; }

  BreakerMove next(const BoardState& s, RandomSource& rng) {
    return std::visit([&](auto& b) { return b.next(s, rng); }, impl_);
  }
  void observe_maker(const BoardState& s, Edge e, MoveOutcome out) {
    std::visit([&](auto& b) { b.observe_maker(s, e, out); }, impl_);
  }
  void encode(StateKey& key) const {
    key.push_back(impl_.index());
    std::visit([&](const auto& b) { b.encode(key); }, impl_);
  }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&impl_);
  }

 private:
  std::string name_;
  Impl impl_;
};

inline Maker make_maker(std::string_view name, const GameConfig& cfg, Sampling sampling = Sampling::KnowledgeAware) {
  const auto p = StrategyParams::resolve(cfg.n, cfg.a, cfg.b, cfg.k, sampling);
  const std::string n(name);
  if (name == "mindeg-large") return {n, MindegLargeMaker(p)};
  if (name == "mindeg-small") return {n, MindegSmallMaker(p)};
  if (name == "pm-large") return {n, PerfectMatchingMaker(p, PmVariant::LargeB)};
  if (name == "pm-small") return {n, PerfectMatchingMaker(p, PmVariant::SmallB)};
  if (name == "conn-large") return {n, ConnLargeMaker(p)};
  if (name == "conn-small") return {n, ConnSmallMaker(p)};
  if (name == "hamilton") return {n, HamiltonMaker(p)};
  if (name == "random") return {n, RandomMaker(p)};
  throw ConfigError("unknown maker strategy '" + n + "'; known: " + join_names(kMakerNames));
}

inline Breaker make_breaker(std::string_view name, const GameConfig& cfg) {
  const std::string n(name);
  if (name == "star-phases") return {n, StarPhasesBreaker(cfg.n)};
  if (name == "single-star") return {n, SingleStarBreaker(cfg.n, cfg.k)};
  if (name == "random") return {n, RandomBreaker()};
  throw ConfigError("unknown breaker strategy '" + n + "'; known: " + join_names(kBreakerNames));
}

}  // namespace phantom
