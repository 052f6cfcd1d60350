#pragma once

#include <cstdint>
#include <initializer_list>

namespace zsl {

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Stable hash of a sequence of 64-bit words, used to derive per-trial and
// per-restart seeds from a master seed: hash_seed({master, grid, trial}).
std::uint64_t hash_seed(std::initializer_list<std::uint64_t> words) noexcept;

// Counter-based generator: draw i of stream `key` is
//   mix64(key + (i + 1) * 0x9E3779B97F4A7C15),
// i.e. SplitMix64 with its state made explicit. Any draw can be computed
// directly from (key, i), so results do not depend on platform, library
// version or on how work is split across threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  static std::uint64_t at(std::uint64_t key, std::uint64_t index) noexcept;
  // Uniform in [0, 1) with 53 random bits.
  static double uniform_at(std::uint64_t key, std::uint64_t index) noexcept;

  std::uint64_t next_u64() noexcept { return at(key_, counter_++); }
  double uniform() noexcept;
  // Uniform in (0, 1]; safe to take the logarithm of.
  double uniform_open0() noexcept;
  // Unbiased integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  // Standard normal via Box-Muller (one pair of uniforms per call).
  double normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace zsl
