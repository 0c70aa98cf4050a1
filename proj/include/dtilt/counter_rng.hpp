#pragma once

#include <cstdint>

namespace dtilt {

// Counter-based uniform generator: the value at (key, index) is a pure
// function of both, so any step of any stream can be produced independently.

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Key of an independent substream, e.g. one Monte Carlo replication.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t key, std::uint64_t index) noexcept {
    const std::uint64_t bits = splitmix64(key ^ splitmix64(index));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace dtilt
