#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phantom/errors.hpp"

namespace phantom {

/// SplitMix64 finalizer; also used to derive per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `master`. Independent of scheduling order.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Every uniform choice made by a strategy flows through this interface, so the
/// exact oracle can substitute an enumerating source for the sampling one.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform integer in [0, m). m must be at least 1; m == 1 is not a choice point.
  virtual std::uint64_t uniform_index(std::uint64_t m) = 0;

  template <class T>
  const T& uniform_pick(std::span<const T> items) {
    if (items.empty()) throw ContractError("uniform_pick from an empty set");
    return items[uniform_index(items.size())];
  }
  template <class T>
  const T& uniform_pick(const std::vector<T>& items) {
    return uniform_pick(std::span<const T>(items));
  }
};

/// xoshiro256** seeded through SplitMix64. Bounded draws use rejection on the
/// 128-bit product, so the stream is identical on every platform.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) {
      s = splitmix64(x);
      x += 0x9e3779b97f4a7c15ULL;
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  std::uint64_t uniform_index(std::uint64_t m) override {
    if (m == 0) throw ContractError("uniform_index(0)");
    if (m == 1) return 0;
    // Lemire's multiply-and-reject.
    unsigned __int128 prod = static_cast<unsigned __int128>(next()) * m;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < m) {
      const std::uint64_t threshold = (0 - m) % m;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>(next()) * m;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4]{};
};

/// Thrown by ScriptedRandom when the scripted prefix is exhausted.
struct ChoiceRequired {
  std::uint64_t options;
};

/// Replays a fixed prefix of choices and raises ChoiceRequired at the first
/// choice point beyond it. The exact oracle branches on that signal.
class ScriptedRandom final : public RandomSource {
 public:
  explicit ScriptedRandom(std::span<const std::uint64_t> prefix) : prefix_(prefix) {}

  std::uint64_t uniform_index(std::uint64_t m) override {
    if (m == 0) throw ContractError("uniform_index(0)");
    if (m == 1) return 0;
    if (pos_ == prefix_.size()) throw ChoiceRequired{m};
    const std::uint64_t c = prefix_[pos_++];
    if (c >= m) throw ContractError("scripted choice out of range");
    return c;
  }

  std::size_t consumed() const noexcept { return pos_; }

 private:
  std::span<const std::uint64_t> prefix_;
  std::size_t pos_ = 0;
};

}  // namespace phantom
