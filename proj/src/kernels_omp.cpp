#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include <omp.h>

#include "dtilt/cgf_ldp.hpp"
#include "dtilt/counter_rng.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt::parallel {

namespace {

// Below this many counts per step the DP stays on one thread.
constexpr std::size_t kDpParallelThreshold = 2048;

// Paths per enumeration block.
constexpr std::uint64_t kBlockBits = 10;

}  // namespace

int max_threads() noexcept { return omp_get_max_threads(); }

std::vector<double> occupation_dp(const ChainParams& chain, std::size_t n) {
    std::vector<double> a0(n + 1, 0.0), a1(n + 1, 0.0), b0(n + 1, 0.0), b1(n + 1, 0.0);
    a0[0] = chain.pi0;
    a1[1] = chain.pi1;
    double* p0 = a0.data();
    double* p1 = a1.data();
    double* q0 = b0.data();
    double* q1 = b1.data();

#pragma omp parallel if (n >= kDpParallelThreshold && omp_get_max_threads() > 1)
    {
        const auto tid = static_cast<std::size_t>(omp_get_thread_num());
        const auto threads = static_cast<std::size_t>(omp_get_num_threads());
        for (std::size_t t = 2; t <= n; ++t) {
            // Contiguous slices keep the inner loop vectorizable.
            const std::size_t width = t + 1;
            const std::size_t lo = width * tid / threads;
            const std::size_t hi = width * (tid + 1) / threads;
            detail::occupation_step(chain, p0, p1, q0, q1, lo, hi);
#pragma omp barrier
#pragma omp single
            {
                std::swap(p0, q0);
                std::swap(p1, q1);
            }
        }
    }

    std::vector<double> probs(n + 1);
    for (std::size_t m = 0; m <= n; ++m) probs[m] = p0[m] + p1[m];
    return probs;
}

PathSums enumerate_paths(const ChainParams& chain, std::size_t n, std::span<const double> pgf_points) {
    const std::uint64_t paths = std::uint64_t{1} << n;
    const std::uint64_t block = std::uint64_t{1} << std::min<std::uint64_t>(kBlockBits, n);
    const auto blocks = static_cast<std::ptrdiff_t>(paths / block);
    const std::size_t k = pgf_points.size();
    const std::size_t width = n + 1 + k;

    // Row i holds block i's pmf followed by its pgf sums.
    std::vector<double> partial(static_cast<std::size_t>(blocks) * width, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < blocks; ++i) {
        double* row = partial.data() + static_cast<std::size_t>(i) * width;
        const std::uint64_t start = static_cast<std::uint64_t>(i) * block;
        for (std::uint64_t bits = start; bits < start + block; ++bits) {
            const double p = detail::path_probability(chain, bits, n);
            const int ones = std::popcount(bits);
            row[ones] += p;
            for (std::size_t j = 0; j < k; ++j) row[n + 1 + j] += p * std::pow(pgf_points[j], ones);
        }
    }

    PathSums out;
    out.pmf.assign(n + 1, 0.0);
    out.pgf.assign(k, 0.0);
    for (std::ptrdiff_t i = 0; i < blocks; ++i) {
        const double* row = partial.data() + static_cast<std::size_t>(i) * width;
        for (std::size_t m = 0; m <= n; ++m) out.pmf[m] += row[m];
        for (std::size_t j = 0; j < k; ++j) out.pgf[j] += row[n + 1 + j];
    }
    return out;
}

PathMoments path_moments(const ChainParams& chain, std::size_t n, double j0, double j1, double center) {
    const std::uint64_t paths = std::uint64_t{1} << n;
    const std::uint64_t block = std::uint64_t{1} << std::min<std::uint64_t>(kBlockBits, n);
    const auto blocks = static_cast<std::ptrdiff_t>(paths / block);
    std::vector<PathMoments> partial(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < blocks; ++i) {
        PathMoments acc;
        const std::uint64_t start = static_cast<std::uint64_t>(i) * block;
        for (std::uint64_t bits = start; bits < start + block; ++bits) {
            const double p = detail::path_probability(chain, bits, n);
            double j = 0.0;
            for (std::size_t t = 0; t < n; ++t) j += ((bits >> t) & 1U) ? j1 : j0;
            const double dev = j - center;
            acc.mean_shift += p * dev;
            acc.second_shift += p * dev * dev;
        }
        partial[static_cast<std::size_t>(i)] = acc;
    }

    PathMoments out;
    for (const PathMoments& pm : partial) {
        out.mean_shift += pm.mean_shift;
        out.second_shift += pm.second_shift;
    }
    return out;
}

std::vector<ReplicationSample> simulate_replications(const ChainParams& chain, std::size_t n,
                                                     double j0, double j1, double offset,
                                                     std::size_t replications, std::uint64_t seed) {
    std::vector<ReplicationSample> out(replications);
    const auto reps = static_cast<std::ptrdiff_t>(replications);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < reps; ++r) {
        out[static_cast<std::size_t>(r)] =
            detail::simulate_one(chain, n, j0, j1, offset, derive_stream(seed, static_cast<std::uint64_t>(r)));
    }
    return out;
}

GridValues cgf_grid(const ChainParams& chain, std::size_t n, std::span<const double> thetas) {
    GridValues g;
    g.lambda_n.resize(thetas.size());
    g.lambda_inf.resize(thetas.size());
    const auto count = static_cast<std::ptrdiff_t>(thetas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        g.lambda_n[k] = cgf_finite(chain, n, thetas[k]);
        g.lambda_inf[k] = cgf_limit(chain, thetas[k]);
    }
    return g;
}

}  // namespace dtilt::parallel
