#include <cmath>
#include <limits>

#include "dtilt/counter_rng.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt::detail {

double path_probability(const ChainParams& chain, std::uint64_t bits, std::size_t n) noexcept {
    int prev = static_cast<int>(bits & 1U);
    double p = chain.pi(prev);
    for (std::size_t t = 1; t < n; ++t) {
        const int cur = static_cast<int>((bits >> t) & 1U);
        p *= chain.transition(prev, cur);
        prev = cur;
    }
    return p;
}

ReplicationSample simulate_one(const ChainParams& chain, std::size_t n, double j0, double j1,
                               double offset, std::uint64_t key) noexcept {
    ReplicationSample s;
    int x = initial_state(chain, counter_uniform(key, 0));
    double j = x == 0 ? j0 : j1;
    std::uint32_t ones = static_cast<std::uint32_t>(x);
    for (std::size_t t = 1; t < n; ++t) {
        x = step_state(chain, x, counter_uniform(key, t));
        j += x == 0 ? j0 : j1;
        ones += static_cast<std::uint32_t>(x);
    }
    s.j_letters = j;
    s.ones = ones;
    s.j_occupation = offset - chain.ell * static_cast<double>(ones);
    return s;
}

void occupation_step(const ChainParams& chain, const double* prev0, const double* prev1,
                     double* next0, double* next1, std::size_t lo, std::size_t hi) noexcept {
    const double stay0 = 1.0 - chain.a;
    const double stay1 = 1.0 - chain.b;
    // Far-tail mass underflows gradually; subnormal arithmetic is two orders
    // of magnitude slower, so anything below the smallest normal goes to zero.
    constexpr double tiny = std::numeric_limits<double>::min();
    for (std::size_t m = lo; m < hi; ++m) {
        const double v0 = prev0[m] * stay0 + prev1[m] * chain.b;
        const double v1 = m == 0 ? 0.0 : prev0[m - 1] * chain.a + prev1[m - 1] * stay1;
        next0[m] = v0 < tiny ? 0.0 : v0;
        next1[m] = v1 < tiny ? 0.0 : v1;
    }
}

}  // namespace dtilt::detail
