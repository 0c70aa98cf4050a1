#pragma once

#include <cstddef>

#include "dtilt/markov_chain.hpp"

namespace dtilt {

/// Hamming distortion level D. Paired with a chain it must satisfy
/// 0 < D < min(pi0, pi1); see check_interior().
struct DistortionLevel {
    double value = 0.0;

    constexpr explicit DistortionLevel(double d) noexcept : value(d) {}
};

/// Single-letter Blahut-Arimoto operating point. beta is in nats.
struct BAOperatingPoint {
    double beta = 0.0;
    double q0 = 0.0;
    double q1 = 0.0;
    double z0 = 0.0;
    double z1 = 0.0;

    [[nodiscard]] double q(int state) const noexcept { return state == 0 ? q0 : q1; }
    [[nodiscard]] double z(int state) const noexcept { return state == 0 ? z0 : z1; }
};

struct BAIteration {
    BAOperatingPoint point;
    std::size_t iterations = 0;
};

struct TiltedStats {
    double mu_d = 0.0;    // bits/letter
    double h_rate = 0.0;  // entropy rate of the chain, bits/letter
    double gap = 0.0;     // mu_D - R(D) = H(pi) - h_rate, D-free
    double v_iid = 0.0;   // ell^2 pi0 pi1
    double v_sl = 0.0;    // lim Var(J_n)/n
};

inline constexpr double kBaDefaultTol = 1e-12;
inline constexpr std::size_t kBaDefaultMaxIter = 100000;

/// h2(p) in bits with 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// Throws RegimeError unless 0 < D < min(pi0, pi1).
void check_interior(const ChainParams& chain, DistortionLevel d);

/// Closed-form operating point: beta = ln((1-D)/D),
/// q_x = (pi_x - D)/(1 - 2D), Z(x) = pi_x/(1 - D).
BAOperatingPoint ba_operating_point(const ChainParams& chain, DistortionLevel d);

/// Generic alternating update at fixed slope beta = ln((1-D)/D), starting
/// from q = (1/2, 1/2). Stops when the sup-norm change in q drops below tol.
/// Z(x) is taken from the final q. Throws ConvergenceError past max_iter.
BAIteration ba_fixed_point_iterate(const ChainParams& chain, DistortionLevel d,
                                   double tol = kBaDefaultTol,
                                   std::size_t max_iter = kBaDefaultMaxIter);

/// d-tilted information via the binary Hamming closed form
/// -log2(pi_x) - h2(D).
double jtilt(const ChainParams& chain, DistortionLevel d, int state);

/// d-tilted information from its definition,
/// -log2 sum_xhat q(xhat) exp(-beta (d(x, xhat) - D)), at a given operating point.
double jtilt_generic(const BAOperatingPoint& point, DistortionLevel d, int state);

TiltedStats tilted_stats(const ChainParams& chain, DistortionLevel d);

/// ell^2 pi0 pi1, the variance of the tilted information under pi.
double single_letter_variance(const ChainParams& chain) noexcept;

/// ab(2-a-b)/(a+b)^3 * log2^2(a/b).
double asymptotic_variance(const ChainParams& chain) noexcept;

/// pi0 h2(a) + pi1 h2(b).
double entropy_rate(const ChainParams& chain);

}  // namespace dtilt
