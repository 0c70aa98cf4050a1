#include "dtilt/markov_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dtilt/counter_rng.hpp"
#include "dtilt/errors.hpp"

namespace dtilt {

namespace {

void check_open_unit(double p, const char* name) {
    if (!(p > kBoundaryGuard && p < 1.0 - kBoundaryGuard)) {
        throw DomainError(std::string("transition parameter ") + name + " = " + std::to_string(p) +
                          " must lie strictly inside (0, 1)");
    }
}

}  // namespace

double ChainParams::transition(int from, int to) const noexcept {
    if (from == 0) return to == 0 ? 1.0 - a : a;
    return to == 0 ? b : 1.0 - b;
}

ChainParams derive_chain(double a, double b) {
    check_open_unit(a, "a");
    check_open_unit(b, "b");
    ChainParams c;
    c.a = a;
    c.b = b;
    c.pi0 = b / (a + b);
    c.pi1 = a / (a + b);
    c.lambda2 = 1.0 - a - b;
    c.ell = std::log2(a) - std::log2(b);
    return c;
}

double indicator_autocov(const ChainParams& chain, std::size_t lag) {
    return chain.pi0 * chain.pi1 * std::pow(chain.lambda2, static_cast<double>(lag));
}

std::size_t Trajectory::ones() const noexcept {
    return static_cast<std::size_t>(std::count(states.begin(), states.end(), std::uint8_t{1}));
}

Trajectory sample_trajectory(const ChainParams& chain, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("trajectory length must be at least 1");
    Trajectory traj;
    traj.seed = seed;
    traj.states.resize(n);
    int x = initial_state(chain, counter_uniform(seed, 0));
    traj.states[0] = static_cast<std::uint8_t>(x);
    for (std::size_t t = 1; t < n; ++t) {
        x = step_state(chain, x, counter_uniform(seed, t));
        traj.states[t] = static_cast<std::uint8_t>(x);
    }
    return traj;
}

}  // namespace dtilt
