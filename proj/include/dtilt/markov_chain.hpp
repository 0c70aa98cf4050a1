#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dtilt {

/// Parameters below this distance from {0, 1} are rejected.
inline constexpr double kBoundaryGuard = 1e-12;

/**
 * Stationary two-state chain with transition matrix
 *
 *     P = [ 1-a   a  ]
 *         [  b   1-b ]
 *
 * together with the derived stationary law, second eigenvalue and the
 * log-ratio ell = log2(a/b) in bits. Construct with derive_chain().
 */
struct ChainParams {
    double a = 0.0;
    double b = 0.0;
    double pi0 = 0.0;
    double pi1 = 0.0;
    double lambda2 = 0.0;
    double ell = 0.0;

    [[nodiscard]] double pi(int state) const noexcept { return state == 0 ? pi0 : pi1; }
    [[nodiscard]] double transition(int from, int to) const noexcept;
    [[nodiscard]] bool symmetric() const noexcept { return a == b; }
};

/// Throws DomainError unless both parameters lie in (1e-12, 1 - 1e-12).
ChainParams derive_chain(double a, double b);

/// Cov(1{X_s = 1}, 1{X_{s+k} = 1}) = pi0 * pi1 * lambda2^k.
double indicator_autocov(const ChainParams& chain, std::size_t lag);

struct Trajectory {
    std::vector<std::uint8_t> states;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t n() const noexcept { return states.size(); }
    [[nodiscard]] std::size_t ones() const noexcept;
};

/// Next state given the current one and a uniform draw in [0, 1).
inline int step_state(const ChainParams& chain, int current, double uniform) noexcept {
    if (current == 0) return uniform < chain.a ? 1 : 0;
    return uniform < chain.b ? 0 : 1;
}

/// Stationary initial state by inverse CDF on pi.
inline int initial_state(const ChainParams& chain, double uniform) noexcept {
    return uniform < chain.pi0 ? 0 : 1;
}

/// Step t of the path uses counter_uniform(seed, t); n must be >= 1.
Trajectory sample_trajectory(const ChainParams& chain, std::size_t n, std::uint64_t seed);

}  // namespace dtilt
