#pragma once

#include <cstdint>

namespace ergolab {

/// Finalizing avalanche mixer (splitmix64). Bijective on 64-bit words, so
/// distinct inputs never collide; statistically indistinguishable from a
/// random permutation for our purposes.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based uniform in [0,1): hash (seed, n), take the top 53 bits.
/// Stateless, so u(seed, n) is O(1) random access and runs are reproducible
/// regardless of evaluation order.
constexpr double uniform01(std::uint64_t seed, std::uint64_t n) noexcept {
    const std::uint64_t z = mix64(seed ^ mix64(n));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

/// Derive an independent stream seed, e.g. one per experiment repetition.
/// Tags keep streams for different purposes (selection bits, event indicators,
/// instance generators) from colliding even under equal numeric seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return mix64(seed + 0x517cc1b727220a95ULL * tag);
}

}  // namespace ergolab
