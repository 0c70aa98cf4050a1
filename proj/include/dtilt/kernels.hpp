#pragma once

// Hot loops, each in two flavours: a plain serial reference and an OpenMP
// version. The public API in the other headers dispatches to the OpenMP
// versions; tests and the benchmark compare the two.
//
// The DP, simulation and grid kernels only partition independent work, so
// both flavours are bit-identical. Path enumeration sums over fixed-size
// blocks merged in block order: the result does not depend on the thread
// count, and differs from the serial sum by rounding only.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dtilt/markov_chain.hpp"
#include "dtilt/montecarlo.hpp"

namespace dtilt {

struct PathSums {
    std::vector<double> pmf;  // indexed by number of ones
    std::vector<double> pgf;  // one entry per requested u
};

struct PathMoments {
    double mean_shift = 0.0;   // E[J - center]
    double second_shift = 0.0; // E[(J - center)^2]
};

struct GridValues {
    std::vector<double> lambda_n;
    std::vector<double> lambda_inf;
};

namespace serial {

std::vector<double> occupation_dp(const ChainParams& chain, std::size_t n);
PathSums enumerate_paths(const ChainParams& chain, std::size_t n, std::span<const double> pgf_points);
PathMoments path_moments(const ChainParams& chain, std::size_t n, double j0, double j1, double center);
std::vector<ReplicationSample> simulate_replications(const ChainParams& chain, std::size_t n,
                                                     double j0, double j1, double offset,
                                                     std::size_t replications, std::uint64_t seed);
GridValues cgf_grid(const ChainParams& chain, std::size_t n, std::span<const double> thetas);

}  // namespace serial

namespace parallel {

std::vector<double> occupation_dp(const ChainParams& chain, std::size_t n);
PathSums enumerate_paths(const ChainParams& chain, std::size_t n, std::span<const double> pgf_points);
PathMoments path_moments(const ChainParams& chain, std::size_t n, double j0, double j1, double center);
std::vector<ReplicationSample> simulate_replications(const ChainParams& chain, std::size_t n,
                                                     double j0, double j1, double offset,
                                                     std::size_t replications, std::uint64_t seed);
GridValues cgf_grid(const ChainParams& chain, std::size_t n, std::span<const double> thetas);

int max_threads() noexcept;

}  // namespace parallel

namespace detail {

/// Probability of one path encoded in the low n bits of `bits` (bit t = X_{t+1}).
double path_probability(const ChainParams& chain, std::uint64_t bits, std::size_t n) noexcept;

/// One replication of the simulation kernel.
ReplicationSample simulate_one(const ChainParams& chain, std::size_t n, double j0, double j1,
                               double offset, std::uint64_t key) noexcept;

/// Advance the occupation DP by one step for counts in [lo, hi).
void occupation_step(const ChainParams& chain, const double* prev0, const double* prev1,
                     double* next0, double* next1, std::size_t lo, std::size_t hi) noexcept;

}  // namespace detail

}  // namespace dtilt
