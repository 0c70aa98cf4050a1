#include "dtilt/cgf_ldp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dtilt/errors.hpp"
#include "dtilt/exact_dist.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Relabel 0 <-> 1. P diag(1, u) and u * P' diag(1, 1/u) share their
// spectrum, which keeps every evaluation at u <= 1.
ChainParams swapped(const ChainParams& c) {
    ChainParams s = c;
    s.a = c.b;
    s.b = c.a;
    s.pi0 = c.pi1;
    s.pi1 = c.pi0;
    s.ell = -c.ell;
    return s;
}

struct PerronDerivatives {
    double log2_root = 0.0;
    double phi = 0.0;  // d ln lambda_+ / d ln u
    double psi = 0.0;  // d phi / d ln u
};

// Requires 0 <= u <= 1.
PerronDerivatives perron_small_u(const ChainParams& c, double u) {
    const double p = 1.0 - c.a;
    const double q = 1.0 - c.b;
    const double diff = p - q * u;
    const double g = diff * diff + 4.0 * c.a * c.b * u;
    const double r = std::sqrt(g);
    const double lam = 0.5 * (p + q * u + r);

    const double g1 = -2.0 * q * diff + 4.0 * c.a * c.b;
    const double g2 = 2.0 * q * q;
    const double r1 = g1 / (2.0 * r);
    const double r2 = (g2 - 2.0 * r1 * r1) / (2.0 * r);
    const double lam1 = 0.5 * (q + r1);
    const double lam2 = 0.5 * r2;

    PerronDerivatives d;
    d.log2_root = std::log2(lam);
    d.phi = u * lam1 / lam;
    d.psi = d.phi + u * u * lam2 / lam - d.phi * d.phi;
    return d;
}

PerronDerivatives perron_at(const ChainParams& c, double log2_u) {
    if (log2_u <= 0.0) return perron_small_u(c, std::exp2(log2_u));
    PerronDerivatives d = perron_small_u(swapped(c), std::exp2(-log2_u));
    d.log2_root += log2_u;
    d.phi = 1.0 - d.phi;
    return d;
}

// log2 G_n(2^{log2_u}) without overflowing u.
double log2_pgf(const ChainParams& c, std::size_t n, double log2_u) {
    if (log2_u <= 0.0) {
        const double u = std::exp2(log2_u);
        if (u > 0.0) return occupation_pgf(c, n, u).log2_value;
        // Only the all-zeros path survives.
        return std::log2(c.pi0) + static_cast<double>(n - 1) * std::log2(1.0 - c.a);
    }
    // u^{N_n} = u^n (1/u)^{n - N_n}; count zeros on the relabelled chain.
    return static_cast<double>(n) * log2_u + log2_pgf(swapped(c), n, -log2_u);
}

double theta_big(const ChainParams& c) { return 50.0 / std::abs(c.ell); }

}  // namespace

PerronPair transfer_eigenvalues(const ChainParams& chain, double u) {
    if (!(u > 0.0)) throw DomainError("transfer_eigenvalues: u must be positive");
    const double p = 1.0 - chain.a;
    const double q = 1.0 - chain.b;
    const double diff = p - q * u;
    const double r = std::sqrt(diff * diff + 4.0 * chain.a * chain.b * u);
    PerronPair out;
    out.plus = 0.5 * (p + q * u + r);
    out.minus = u * chain.lambda2 / out.plus;
    return out;
}

double perron_root(const ChainParams& chain, double u) { return transfer_eigenvalues(chain, u).plus; }

double cgf_finite(const ChainParams& chain, std::size_t n, double theta) {
    if (n == 0) throw DomainError("cgf_finite: blocklength must be at least 1");
    if (chain.symmetric()) return 0.0;
    const double log2_u = -theta * chain.ell;
    return theta * chain.pi1 * chain.ell + log2_pgf(chain, n, log2_u) / static_cast<double>(n);
}

double cgf_limit(const ChainParams& chain, double theta) {
    if (chain.symmetric()) return 0.0;
    return theta * chain.pi1 * chain.ell + perron_at(chain, -theta * chain.ell).log2_root;
}

double cgf_limit_derivative(const ChainParams& chain, double theta) {
    if (chain.symmetric()) return 0.0;
    // du/dtheta = -ell ln2 u, so d log2 lambda_+ / dtheta = -ell * phi.
    return chain.ell * (chain.pi1 - perron_at(chain, -theta * chain.ell).phi);
}

double cgf_limit_second_derivative(const ChainParams& chain, double theta) {
    if (chain.symmetric()) return 0.0;
    return chain.ell * chain.ell * kLn2 * perron_at(chain, -theta * chain.ell).psi;
}

CGFCurve cgf_curve(const ChainParams& chain, std::size_t n, std::span<const double> thetas) {
    if (n == 0) throw DomainError("cgf_curve: blocklength must be at least 1");
    GridValues grid = parallel::cgf_grid(chain, n, thetas);
    CGFCurve curve;
    curve.n = n;
    curve.thetas.assign(thetas.begin(), thetas.end());
    curve.lambda_n = std::move(grid.lambda_n);
    curve.lambda_inf = std::move(grid.lambda_inf);
    return curve;
}

AchievableInterval achievable_interval(const ChainParams& chain) {
    if (chain.symmetric()) return {0.0, 0.0};
    const double big = theta_big(chain);
    return {cgf_limit_derivative(chain, -big), cgf_limit_derivative(chain, big)};
}

RatePoint rate_function(const ChainParams& chain, double x, double tol) {
    if (chain.symmetric()) throw DomainError("rate_function: degenerate chain (a == b)");
    if (!(tol > 0.0)) throw DomainError("rate_function: tolerance must be positive");
    const AchievableInterval range = achievable_interval(chain);
    if (!range.contains(x)) {
        throw DomainError("rate_function: x = " + std::to_string(x) + " outside (" +
                          std::to_string(range.lo) + ", " + std::to_string(range.hi) + ")");
    }

    auto slope_gap = [&](double th) { return cgf_limit_derivative(chain, th) - x; };

    // Bracket by doubling away from zero.
    const double step = 1.0 / std::abs(chain.ell);
    double lo = 0.0;
    double hi = 0.0;
    std::size_t iter = 0;
    if (slope_gap(0.0) < 0.0) {
        hi = step;
        while (slope_gap(hi) < 0.0) {
            if (++iter > kRateMaxIter) throw ConvergenceError("rate_function: bracketing failed");
            lo = hi;
            hi *= 2.0;
        }
    } else {
        lo = -step;
        while (slope_gap(lo) > 0.0) {
            if (++iter > kRateMaxIter) throw ConvergenceError("rate_function: bracketing failed");
            hi = lo;
            lo *= 2.0;
        }
    }

    double theta = std::clamp(x / cgf_limit_second_derivative(chain, 0.0), lo, hi);
    for (std::size_t it = 1; it <= kRateMaxIter; ++it) {
        const double f = slope_gap(theta);
        if (std::abs(f) <= tol) {
            RatePoint rp;
            rp.x = x;
            rp.theta_star = theta;
            rp.rate = theta == 0.0 ? 0.0 : std::max(0.0, theta * x - cgf_limit(chain, theta));
            rp.iterations = it;
            return rp;
        }
        if (f < 0.0) lo = theta; else hi = theta;
        const double curvature = cgf_limit_second_derivative(chain, theta);
        const double newton = theta - f / curvature;
        theta = (curvature > 0.0 && newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    }
    throw ConvergenceError("rate_function: no convergence within " + std::to_string(kRateMaxIter) +
                           " iterations for x = " + std::to_string(x));
}

SaddlepointTail saddlepoint_tail(const ChainParams& chain, std::size_t n, double x) {
    if (n == 0) throw DomainError("saddlepoint_tail: blocklength must be at least 1");
    if (!(x > 0.0)) throw DomainError("saddlepoint_tail: upper-tail estimate needs x > 0");
    const RatePoint rp = rate_function(chain, x);
    const double nn = static_cast<double>(n);

    SaddlepointTail out;
    out.theta_star = rp.theta_star;
    out.rate = rp.rate;
    out.sigma = std::sqrt(cgf_limit_second_derivative(chain, rp.theta_star) / kLn2);
    const double s = rp.theta_star * kLn2;
    const double estimate =
        std::exp2(-nn * rp.rate) / (s * out.sigma * std::sqrt(2.0 * std::numbers::pi * nn));
    out.probability = std::min(1.0, estimate);
    out.near_gaussian = std::abs(rp.theta_star) < kSaddleGaussianTheta;
    return out;
}

}  // namespace dtilt
