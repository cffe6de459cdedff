#pragma once

/// @file random.hpp
/// @brief Random stream type and seed derivation shared by every run.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace pga {

/// One random stream per run; never shared between runs.
using Rng = std::mt19937_64;

/// SplitMix64 finaliser. Used to derive well-mixed child seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a list of integers, e.g. (base seed, instance, run).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto p : parts) {
        h = splitmix64(h ^ splitmix64(p));
    }
    return h;
}

/// Uniform index in [0, n). n must be positive.
[[nodiscard]] inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

[[nodiscard]] inline double uniform_unit(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

[[nodiscard]] inline bool bernoulli(Rng& rng, double p) {
    if (p >= 1.0) {
        return true;
    }
    if (p <= 0.0) {
        return false;
    }
    return uniform_unit(rng) < p;
}

} // namespace pga
