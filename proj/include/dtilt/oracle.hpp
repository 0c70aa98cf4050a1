#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/markov_chain.hpp"

namespace dtilt {

inline constexpr std::size_t kOracleMaxN = 20;

/// Exhaustive enumeration over all 2^n paths.
struct OracleResult {
    std::size_t n = 0;
    std::vector<double> pmf;  // of N_n
    double mean = 0.0;        // E[N_n]
    double var = 0.0;         // Var(N_n)
    std::vector<std::pair<double, double>> mgf_samples;  // (u, G_n(u))
    std::size_t paths = 0;
};

OracleResult enumerate_pmf(const ChainParams& chain, std::size_t n,
                           std::span<const double> pgf_points = {});

struct OracleVariance {
    double via_pmf = 0.0;    // enumerated PMF pushed through the affine map
    double via_paths = 0.0;  // per-path sums of the generic tilted information
};

/// Var(J_n(D)) two ways. The per-path route evaluates the definition of the
/// tilted information at an iterated BA operating point and never touches
/// the closed form -log2 pi_x - h2(D).
OracleVariance oracle_variance(const ChainParams& chain, DistortionLevel d, std::size_t n);

/// Total-variation distance 0.5 * sum |p - q| (vectors of equal length).
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace dtilt
