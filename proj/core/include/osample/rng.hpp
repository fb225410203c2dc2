#pragma once

#include <cstdint>
#include <random>

namespace osample {

/// splitmix64 finalizer; spreads nearby seeds across the state space.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Engine seeded from splitmix64(seed).
[[nodiscard]] std::mt19937_64 make_rng(std::uint64_t seed);

}  // namespace osample
