#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dtilt/markov_chain.hpp"

// Cumulant generating functions of the centered tilted sum J_n(D) - n mu_D,
// base 2 throughout:
//
//   Lambda_n(theta) = (1/n) log2 E[2^{theta (J_n - n mu_D)}]
//   Lambda(theta)   = theta pi1 ell + log2 lambda_+(u_theta),  u_theta = 2^{-theta ell}
//
// None of these take a distortion level: centering removes it entirely.
// The large-deviation rate function is written over theta rather than over
// u; the map theta -> u_theta is monotone so the supremum is the same.

namespace dtilt {

struct PerronPair {
    double plus = 0.0;
    double minus = 0.0;
};

/// Both eigenvalues of P diag(1, u). The smaller one comes from
/// det / lambda_+ to avoid cancellation.
PerronPair transfer_eigenvalues(const ChainParams& chain, double u);

double perron_root(const ChainParams& chain, double u);

double cgf_finite(const ChainParams& chain, std::size_t n, double theta);
double cgf_limit(const ChainParams& chain, double theta);

/// Analytic Lambda'(theta) and Lambda''(theta).
double cgf_limit_derivative(const ChainParams& chain, double theta);
double cgf_limit_second_derivative(const ChainParams& chain, double theta);

struct CGFCurve {
    std::size_t n = 0;
    std::vector<double> thetas;
    std::vector<double> lambda_n;
    std::vector<double> lambda_inf;
};

CGFCurve cgf_curve(const ChainParams& chain, std::size_t n, std::span<const double> thetas);

struct AchievableInterval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double x) const noexcept { return lo < x && x < hi; }
};

/// (Lambda'(-theta_big), Lambda'(theta_big)) with theta_big = 50/|ell|.
AchievableInterval achievable_interval(const ChainParams& chain);

struct RatePoint {
    double x = 0.0;
    double theta_star = 0.0;
    double rate = 0.0;
    std::size_t iterations = 0;
};

inline constexpr double kRateDefaultTol = 1e-10;
inline constexpr std::size_t kRateMaxIter = 200;

/// I(x) = sup_theta { theta x - Lambda(theta) } by safeguarded Newton on
/// Lambda'(theta) = x. Requires a != b and x inside achievable_interval().
RatePoint rate_function(const ChainParams& chain, double x, double tol = kRateDefaultTol);

struct SaddlepointTail {
    double probability = 0.0;
    double theta_star = 0.0;  // 1/bits
    double sigma = 0.0;       // sqrt of the natural-log CGF curvature at the tilt
    double rate = 0.0;        // I(x), bits
    bool near_gaussian = false;
};

/// Below this |theta*| the first-order estimate is flagged as unreliable.
inline constexpr double kSaddleGaussianTheta = 0.05;

/// First-order saddlepoint estimate of Pr(J_n - n mu_D >= n x) for x > 0:
///
///   2^{-n I(x)} / (s* sigma* sqrt(2 pi n)),  s* = theta* ln 2,
///
/// where sigma*^2 = Lambda''(theta*) / ln 2 is the curvature of the
/// natural-log CGF. J_n lives on a lattice of span |ell|; no continuity
/// correction is applied, so expect an O(s* |ell|) relative error that
/// oscillates with the position of n x on the lattice.
SaddlepointTail saddlepoint_tail(const ChainParams& chain, std::size_t n, double x);

}  // namespace dtilt
