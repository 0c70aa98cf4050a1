#include "dtilt/ba_tilt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dtilt/errors.hpp"

namespace dtilt {

namespace {

// -p log2 p, with the 0 log 0 = 0 convention.
double entropy_term(double p) {
    if (p == 0.0) return 0.0;
    return -p * std::log2(p);
}

// -(1-p) log2(1-p) evaluated through log1p so that small p keeps full accuracy.
double complement_term(double p) {
    if (p == 1.0) return 0.0;
    return -(1.0 - p) * std::log1p(-p) / std::numbers::ln2;
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("binary_entropy: p = " + std::to_string(p) + " outside [0, 1]");
    }
    if (p > 0.5) p = 1.0 - p;
    return entropy_term(p) + complement_term(p);
}

void check_interior(const ChainParams& chain, DistortionLevel d) {
    const double upper = std::min(chain.pi0, chain.pi1);
    if (!(d.value > 0.0 && d.value < upper)) {
        throw RegimeError("distortion D = " + std::to_string(d.value) +
                          " outside the interior regime (0, " + std::to_string(upper) + ")");
    }
}

BAOperatingPoint ba_operating_point(const ChainParams& chain, DistortionLevel d) {
    check_interior(chain, d);
    const double dv = d.value;
    // min(pi0, pi1) <= 1/2 keeps 1 - 2D away from zero in the interior.
    BAOperatingPoint p;
    p.beta = std::log((1.0 - dv) / dv);
    p.q0 = (chain.pi0 - dv) / (1.0 - 2.0 * dv);
    p.q1 = (chain.pi1 - dv) / (1.0 - 2.0 * dv);
    p.z0 = chain.pi0 / (1.0 - dv);
    p.z1 = chain.pi1 / (1.0 - dv);
    return p;
}

BAIteration ba_fixed_point_iterate(const ChainParams& chain, DistortionLevel d, double tol,
                                   std::size_t max_iter) {
    check_interior(chain, d);
    if (!(tol > 0.0)) throw DomainError("BA tolerance must be positive");

    const double beta = std::log((1.0 - d.value) / d.value);
    const double off = std::exp(-beta);  // weight of a mismatched reproduction
    double q[2] = {0.5, 0.5};
    const double pi[2] = {chain.pi0, chain.pi1};

    for (std::size_t it = 1; it <= max_iter; ++it) {
        double next[2] = {0.0, 0.0};
        for (int x = 0; x < 2; ++x) {
            const double w_same = q[x];
            const double w_other = q[1 - x] * off;
            const double z = w_same + w_other;
            next[x] += pi[x] * w_same / z;
            next[1 - x] += pi[x] * w_other / z;
        }
        const double change = std::max(std::abs(next[0] - q[0]), std::abs(next[1] - q[1]));
        q[0] = next[0];
        q[1] = next[1];
        if (change < tol) {
            BAIteration out;
            out.iterations = it;
            out.point.beta = beta;
            out.point.q0 = q[0];
            out.point.q1 = q[1];
            out.point.z0 = q[0] + q[1] * off;
            out.point.z1 = q[1] + q[0] * off;
            return out;
        }
    }
    throw ConvergenceError("BA iteration did not reach tol " + std::to_string(tol) + " within " +
                           std::to_string(max_iter) + " iterations");
}

double jtilt(const ChainParams& chain, DistortionLevel d, int state) {
    check_interior(chain, d);
    return -std::log2(chain.pi(state)) - binary_entropy(d.value);
}

double jtilt_generic(const BAOperatingPoint& point, DistortionLevel d, int state) {
    double sum = 0.0;
    for (int xhat = 0; xhat < 2; ++xhat) {
        const double distortion = xhat == state ? 0.0 : 1.0;
        sum += point.q(xhat) * std::exp(-point.beta * (distortion - d.value));
    }
    return -std::log2(sum);
}

double single_letter_variance(const ChainParams& chain) noexcept {
    return chain.ell * chain.ell * chain.pi0 * chain.pi1;
}

double asymptotic_variance(const ChainParams& chain) noexcept {
    const double s = chain.a + chain.b;
    return chain.a * chain.b * (2.0 - s) / (s * s * s) * chain.ell * chain.ell;
}

double entropy_rate(const ChainParams& chain) {
    return chain.pi0 * binary_entropy(chain.a) + chain.pi1 * binary_entropy(chain.b);
}

TiltedStats tilted_stats(const ChainParams& chain, DistortionLevel d) {
    check_interior(chain, d);
    TiltedStats s;
    const double h_pi = binary_entropy(chain.pi1);
    s.mu_d = h_pi - binary_entropy(d.value);
    s.h_rate = entropy_rate(chain);
    s.gap = h_pi - s.h_rate;
    s.v_iid = single_letter_variance(chain);
    s.v_sl = asymptotic_variance(chain);
    return s;
}

}  // namespace dtilt
