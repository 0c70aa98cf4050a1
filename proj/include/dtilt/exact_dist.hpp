#pragma once

#include <cstddef>
#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/markov_chain.hpp"

namespace dtilt {

/// Default largest blocklength served by the O(n^2) occupation DP.
inline constexpr std::size_t kPmfCap = 32768;

/// Law of the occupation count N_n = #{t : X_t = 1}.
struct OccupationPMF {
    std::size_t n = 0;
    std::vector<double> probs;  // probs[m] = Pr(N_n = m), m = 0..n

    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double total() const noexcept;
};

/// Law of J_n(D) = offset + slope * N_n with slope = -ell.
/// For a == b the law collapses to a single atom at n * mu_D.
struct JnLaw {
    std::size_t n = 0;
    double offset = 0.0;
    double slope = 0.0;
    std::vector<double> support;
    std::vector<double> probs;

    [[nodiscard]] bool point_mass() const noexcept { return support.size() == 1; }
    [[nodiscard]] double mean() const noexcept;
};

OccupationPMF occupation_pmf(const ChainParams& chain, std::size_t n, std::size_t cap = kPmfCap);

/// G_n(u) = pi^T D(u) (P D(u))^{n-1} 1 held as log2 of the (positive) value.
struct PgfValue {
    double log2_value = 0.0;

    [[nodiscard]] double value() const noexcept;
};

/// Transfer-matrix product rescaled at every step; valid for any n >= 1 and u > 0.
PgfValue occupation_pgf(const ChainParams& chain, std::size_t n, double u);

JnLaw jn_law(const ChainParams& chain, DistortionLevel d, std::size_t n,
             std::size_t cap = kPmfCap);

enum class VarianceMethod { double_sum, closed_form };

/// Var(J_n(D)); identical for every admissible D.
double variance_exact(const ChainParams& chain, std::size_t n, VarianceMethod method);

struct VarianceCorrection {
    double correction = 0.0;  // n V_sl - Var(J_n)
    double constant = 0.0;    // limit of the correction as n -> infinity
};

VarianceCorrection variance_correction(const ChainParams& chain, std::size_t n);

/// kappa_2 .. kappa_max_order of J_n(D) - n mu_D, computed from the exact
/// occupation law and kappa_m(cY + d) = c^m kappa_m(Y). max_order in [2, 6].
std::vector<double> centered_cumulants(const ChainParams& chain, DistortionLevel d,
                                       std::size_t n, std::size_t max_order);

/// Cumulants kappa_1..kappa_k of a random variable from its raw moments
/// m_1..m_k, via kappa_m = m_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j m_{m-j}.
std::vector<double> cumulants_from_moments(const std::vector<double>& raw_moments);

/// Pr(J_n(D) - n mu_D >= n x), summed over the exact law.
double exact_centered_upper_tail(const ChainParams& chain, std::size_t n, double x,
                                 std::size_t cap = kPmfCap);

}  // namespace dtilt
