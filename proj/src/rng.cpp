#include "zsl/rng.hpp"

#include <cmath>
#include <numbers>

namespace zsl {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_seed(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x5A534C2D53454544ULL;  // "ZSL-SEED"
  for (std::uint64_t w : words) h = mix64(h + kGamma + mix64(w));
  return h;
}

std::uint64_t CounterRng::at(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(key + (index + 1) * kGamma);
}

double CounterRng::uniform_at(std::uint64_t key, std::uint64_t index) noexcept {
  return static_cast<double>(at(key, index) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open0() noexcept {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  for (;;) {
    std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

double CounterRng::normal() noexcept {
  const double u1 = uniform_open0();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace zsl
