// Serial reference vs OpenMP kernels. Prints best-of-k wall time per kernel.
//
//   bench_kernels [repeats]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/kernels.hpp"

using namespace dtilt;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
    double best = INFINITY;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

// Keeps results observable so the calls are not optimized away.
volatile double sink = 0.0;

void row(const char* name, int repeats, const std::function<double()>& s, const std::function<double()>& p) {
    const double ts = best_of(repeats, [&] { sink = s(); });
    const double tp = best_of(repeats, [&] { sink = p(); });
    std::printf("%-34s %10.4f %10.4f %8.2fx\n", name, ts, tp, ts / tp);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    const ChainParams c = derive_chain(0.1, 0.3);
    const DistortionLevel d{0.1};
    const double j0 = jtilt(c, d, 0), j1 = jtilt(c, d, 1);
    const double offset = -std::log2(c.pi0) - binary_entropy(d.value);

    std::vector<double> thetas;
    for (int i = -200; i <= 200; ++i) thetas.push_back(0.01 * i);
    const std::vector<double> us{0.5, 2.0};

    std::printf("threads: %d, best of %d\n", parallel::max_threads(), repeats);
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");

    row("occupation DP, n = 20000", repeats,
        [&] { return serial::occupation_dp(c, 20000)[10000]; },
        [&] { return parallel::occupation_dp(c, 20000)[10000]; });
    row("path enumeration, n = 20", repeats,
        [&] { return serial::enumerate_paths(c, 20, us).pgf[0]; },
        [&] { return parallel::enumerate_paths(c, 20, us).pgf[0]; });
    row("path moments, n = 20", repeats,
        [&] { return serial::path_moments(c, 20, j0, j1, 0.0).second_shift; },
        [&] { return parallel::path_moments(c, 20, j0, j1, 0.0).second_shift; });
    row("simulation, n = 50, 1e6 reps", repeats,
        [&] { return serial::simulate_replications(c, 50, j0, j1, offset, 1000000, 1)[7].j_letters; },
        [&] { return parallel::simulate_replications(c, 50, j0, j1, offset, 1000000, 1)[7].j_letters; });
    row("CGF grid, n = 4096, 401 tilts", repeats,
        [&] { return serial::cgf_grid(c, 4096, thetas).lambda_n[0]; },
        [&] { return parallel::cgf_grid(c, 4096, thetas).lambda_n[0]; });
    return 0;
}
