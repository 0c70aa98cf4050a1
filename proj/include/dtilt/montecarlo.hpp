#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/exact_dist.hpp"
#include "dtilt/markov_chain.hpp"

namespace dtilt {

inline constexpr std::size_t kMinReplications = 100;
inline constexpr double kDefaultSimBudget = 1e9;  // replications * n

struct SimOptions {
    /// Standardize ks_normal by Var(J_n)/n instead of V_sl.
    bool finite_n_standardization = false;
    double budget = kDefaultSimBudget;
};

struct SimReport {
    std::size_t n = 0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    double emp_mean = 0.0;
    double emp_var = 0.0;
    double var_std_error = 0.0;  // standard error of emp_var
    double ks_exact = 0.0;
    double ks_normal = 0.0;
    double max_pathwise_gap = 0.0;  // per-letter sum vs occupation-count form
};

/// Per-replication output of the simulation kernel.
struct ReplicationSample {
    double j_letters = 0.0;     // sum_t jtilt(X_t, D)
    double j_occupation = 0.0;  // n(-log2 pi0 - h2(D)) - ell N_n
    std::uint32_t ones = 0;
};

/// Replication r draws its path from the stream derive_stream(seed, r).
SimReport simulate(const ChainParams& chain, DistortionLevel d, std::size_t n,
                   std::size_t replications, std::uint64_t seed, const SimOptions& options = {});

/// sup_z |F(z) - Phi(z)| for the exact law of (J_n - n mu_D)/sqrt(n v),
/// v = V_sl by default. Returns 0.5 for the degenerate a == b chain.
double exact_normal_distance(const ChainParams& chain, std::size_t n,
                             bool finite_n_standardization = false);

struct CltPoint {
    std::size_t n = 0;
    double ks_normal = 0.0;       // sampled
    double exact_distance = 0.0;  // no sampling noise
};

/// n_grid must be strictly increasing; requires a != b.
std::vector<CltPoint> clt_distance_sweep(const ChainParams& chain, DistortionLevel d,
                                         std::span<const std::size_t> n_grid,
                                         std::size_t replications, std::uint64_t seed);

double standard_normal_cdf(double z) noexcept;

}  // namespace dtilt
