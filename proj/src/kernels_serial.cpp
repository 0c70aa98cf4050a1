#include <bit>
#include <cmath>
#include <utility>

#include "dtilt/cgf_ldp.hpp"
#include "dtilt/counter_rng.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt::serial {

std::vector<double> occupation_dp(const ChainParams& chain, std::size_t n) {
    // alpha_t(x, m): probability that X_t = x with m ones among X_1..X_t.
    std::vector<double> a0(n + 1, 0.0), a1(n + 1, 0.0), b0(n + 1, 0.0), b1(n + 1, 0.0);
    a0[0] = chain.pi0;
    a1[1] = chain.pi1;
    for (std::size_t t = 2; t <= n; ++t) {
        detail::occupation_step(chain, a0.data(), a1.data(), b0.data(), b1.data(), 0, t + 1);
        std::swap(a0, b0);
        std::swap(a1, b1);
    }
    std::vector<double> probs(n + 1);
    for (std::size_t m = 0; m <= n; ++m) probs[m] = a0[m] + a1[m];
    return probs;
}

PathSums enumerate_paths(const ChainParams& chain, std::size_t n, std::span<const double> pgf_points) {
    PathSums out;
    out.pmf.assign(n + 1, 0.0);
    out.pgf.assign(pgf_points.size(), 0.0);
    const std::uint64_t paths = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < paths; ++bits) {
        const double p = detail::path_probability(chain, bits, n);
        const int ones = std::popcount(bits);
        out.pmf[static_cast<std::size_t>(ones)] += p;
        for (std::size_t i = 0; i < pgf_points.size(); ++i) {
            out.pgf[i] += p * std::pow(pgf_points[i], ones);
        }
    }
    return out;
}

PathMoments path_moments(const ChainParams& chain, std::size_t n, double j0, double j1, double center) {
    PathMoments out;
    const std::uint64_t paths = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < paths; ++bits) {
        const double p = detail::path_probability(chain, bits, n);
        double j = 0.0;
        for (std::size_t t = 0; t < n; ++t) j += ((bits >> t) & 1U) ? j1 : j0;
        const double dev = j - center;
        out.mean_shift += p * dev;
        out.second_shift += p * dev * dev;
    }
    return out;
}

std::vector<ReplicationSample> simulate_replications(const ChainParams& chain, std::size_t n,
                                                     double j0, double j1, double offset,
                                                     std::size_t replications, std::uint64_t seed) {
    std::vector<ReplicationSample> out(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        out[r] = detail::simulate_one(chain, n, j0, j1, offset, derive_stream(seed, r));
    }
    return out;
}

GridValues cgf_grid(const ChainParams& chain, std::size_t n, std::span<const double> thetas) {
    GridValues g;
    g.lambda_n.resize(thetas.size());
    g.lambda_inf.resize(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        g.lambda_n[i] = cgf_finite(chain, n, thetas[i]);
        g.lambda_inf[i] = cgf_limit(chain, thetas[i]);
    }
    return g;
}

}  // namespace dtilt::serial
