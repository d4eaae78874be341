#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "phantom/errors.hpp"

namespace phantom {

enum class GameKind : std::uint8_t { MinDegree, Connectivity, PerfectMatching, Hamiltonicity };

inline constexpr std::array<std::string_view, 4> kGameNames = {"mindegree", "connectivity", "pm",
                                                              "hamiltonicity"};

constexpr std::string_view to_string(GameKind g) { return kGameNames[static_cast<int>(g)]; }

inline std::optional<GameKind> parse_game(std::string_view s) {
  if (s == "mindegree" || s == "mindeg") return GameKind::MinDegree;
  if (s == "connectivity" || s == "conn") return GameKind::Connectivity;
  if (s == "pm" || s == "perfect-matching" || s == "perfectmatching") return GameKind::PerfectMatching;
  if (s == "hamiltonicity" || s == "hamilton" || s == "ham") return GameKind::Hamiltonicity;
  return std::nullopt;
}

/// The (n, a, b, game, k) quintuple plus engine limits.
struct GameConfig {
  int n = 2;
  int a = 1;
  int b = 1;
  GameKind game = GameKind::MinDegree;
  int k = 1;
  /// Hard round limit; 0 selects the default n^2.
  std::int64_t stall_cap = 0;
  std::uint64_t seed = 0;

  std::int64_t edge_count() const noexcept {
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
  }

  std::int64_t effective_stall_cap() const noexcept {
    return stall_cap > 0 ? stall_cap : static_cast<std::int64_t>(n) * n;
  }

  /// Degree Maker needs at every vertex before she can possibly win; used by
  /// dead-position detection.
  int required_degree() const noexcept {
    switch (game) {
      case GameKind::MinDegree: return k;
      case GameKind::Hamiltonicity: return 2;
      default: return 1;
    }
  }

  void validate() const {
    if (n < 2) throw ConfigError("n must be at least 2");
    if (a < 1) throw ConfigError("Maker bias a must be at least 1");
    if (b < 1) throw ConfigError("Breaker bias b must be at least 1");
    if (k < 1) throw ConfigError("degree target k must be at least 1");
    if (game == GameKind::PerfectMatching && n % 2 != 0)
      throw ConfigError("perfect matching game requires an even number of vertices");
    if (game == GameKind::Hamiltonicity && n < 3)
      throw ConfigError("Hamiltonicity game requires at least 3 vertices");
    if (n > 46340) throw ConfigError("n too large for the dense board");
    const std::int64_t min_cap = (edge_count() + a + b - 1) / (a + b);
    if (stall_cap != 0 && stall_cap < min_cap)
      throw ConfigError("stall_cap must be at least ceil(C(n,2)/(a+b)) = " + std::to_string(min_cap));
  }
};

}  // namespace phantom
