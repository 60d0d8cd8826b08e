#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace hgoe {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view text) noexcept;

// Seed of the independent stream for `key` (e.g. a topic id) under a run-level
// seed: splitmix64(seed ^ fnv1a64(key)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// xoshiro256** with SplitMix64 state expansion. Output, bounded integers and
// doubles are fully specified here, so streams are identical on every
// platform and standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept;

  // Uniform in [0, bound). bound must be > 0. Lemire's multiply-shift with
  // rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace hgoe
