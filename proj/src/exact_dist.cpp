#include "dtilt/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dtilt/errors.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt {

double OccupationPMF::mean() const noexcept {
    double s = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) s += static_cast<double>(m) * probs[m];
    return s;
}

double OccupationPMF::total() const noexcept {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

double JnLaw::mean() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) s += support[i] * probs[i];
    return s;
}

double PgfValue::value() const noexcept { return std::exp2(log2_value); }

OccupationPMF occupation_pmf(const ChainParams& chain, std::size_t n, std::size_t cap) {
    if (n == 0) throw DomainError("occupation_pmf: blocklength must be at least 1");
    if (n > cap) {
        throw ResourceError("occupation_pmf: n = " + std::to_string(n) + " exceeds the DP cap " +
                            std::to_string(cap) + "; use occupation_pgf or the CGF routes");
    }
    return OccupationPMF{n, parallel::occupation_dp(chain, n)};
}

PgfValue occupation_pgf(const ChainParams& chain, std::size_t n, double u) {
    if (n == 0) throw DomainError("occupation_pgf: blocklength must be at least 1");
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("occupation_pgf: u must be positive");

    const double a = chain.a;
    const double b = chain.b;
    // Row vector pi^T D(u), then n-1 right-multiplications by P D(u).
    double v0 = chain.pi0;
    double v1 = chain.pi1 * u;
    double log2_scale = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double s = v0 + v1;
        log2_scale += std::log2(s);
        v0 /= s;
        v1 /= s;
        const double next0 = v0 * (1.0 - a) + v1 * b;
        const double next1 = (v0 * a + v1 * (1.0 - b)) * u;
        v0 = next0;
        v1 = next1;
    }
    return PgfValue{log2_scale + std::log2(v0 + v1)};
}

JnLaw jn_law(const ChainParams& chain, DistortionLevel d, std::size_t n, std::size_t cap) {
    check_interior(chain, d);
    if (n == 0) throw DomainError("jn_law: blocklength must be at least 1");
    const double nn = static_cast<double>(n);
    const double h_d = binary_entropy(d.value);

    JnLaw law;
    law.n = n;
    if (chain.symmetric()) {
        const double mu_d = binary_entropy(chain.pi1) - h_d;
        law.offset = nn * mu_d;
        law.slope = 0.0;
        law.support = {law.offset};
        law.probs = {1.0};
        return law;
    }
    law.offset = nn * (-std::log2(chain.pi0) - h_d);
    law.slope = -chain.ell;
    law.probs = occupation_pmf(chain, n, cap).probs;
    law.support.resize(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        law.support[m] = law.offset + law.slope * static_cast<double>(m);
    }
    return law;
}

namespace {

// lambda^n, flushed to zero once |lambda|^n drops below 1e-300.
double power_or_zero(double lambda, std::size_t n) {
    if (lambda == 0.0) return 0.0;
    const double log_mag = static_cast<double>(n) * std::log(std::abs(lambda));
    if (log_mag < std::log(1e-300)) return 0.0;
    return std::pow(lambda, static_cast<double>(n));
}

}  // namespace

double variance_exact(const ChainParams& chain, std::size_t n, VarianceMethod method) {
    if (n == 0) throw DomainError("variance_exact: blocklength must be at least 1");
    const double base = single_letter_variance(chain);
    const double nn = static_cast<double>(n);
    const double r = chain.lambda2;

    if (method == VarianceMethod::double_sum) {
        double acc = 0.0;
        double rk = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            rk *= r;
            acc += static_cast<double>(n - k) * rk;
        }
        return base * (nn + 2.0 * acc);
    }
    const double one_minus = 1.0 - r;
    const double bracket =
        nn * (1.0 + r) / one_minus - 2.0 * r * (1.0 - power_or_zero(r, n)) / (one_minus * one_minus);
    return base * bracket;
}

VarianceCorrection variance_correction(const ChainParams& chain, std::size_t n) {
    if (n == 0) throw DomainError("variance_correction: blocklength must be at least 1");
    const double r = chain.lambda2;
    const double one_minus = 1.0 - r;
    VarianceCorrection c;
    c.constant = 2.0 * single_letter_variance(chain) * r / (one_minus * one_minus);
    c.correction = c.constant * (1.0 - power_or_zero(r, n));
    return c;
}

std::vector<double> cumulants_from_moments(const std::vector<double>& raw) {
    const std::size_t k = raw.size();
    std::vector<double> kappa(k, 0.0);
    for (std::size_t m = 1; m <= k; ++m) {
        double value = raw[m - 1];
        double binom = 1.0;  // C(m-1, 0)
        for (std::size_t j = 1; j < m; ++j) {
            value -= binom * kappa[j - 1] * raw[m - j - 1];
            binom = binom * static_cast<double>(m - j) / static_cast<double>(j);
        }
        kappa[m - 1] = value;
    }
    return kappa;
}

std::vector<double> centered_cumulants(const ChainParams& chain, DistortionLevel d, std::size_t n,
                                       std::size_t max_order) {
    if (max_order < 2 || max_order > 6) {
        throw OrderError("centered_cumulants: max_order must be in [2, 6], got " +
                         std::to_string(max_order));
    }
    check_interior(chain, d);
    if (n == 0) throw DomainError("centered_cumulants: blocklength must be at least 1");

    std::vector<double> out(max_order - 1, 0.0);
    if (chain.symmetric()) return out;

    const OccupationPMF pmf = occupation_pmf(chain, n);
    const double mean = pmf.mean();
    // Raw moments of N_n - mean; kappa_m for m >= 2 is shift invariant.
    std::vector<double> raw(max_order, 0.0);
    for (std::size_t m = 0; m <= n; ++m) {
        const double dev = static_cast<double>(m) - mean;
        double pw = pmf.probs[m];
        for (std::size_t k = 0; k < max_order; ++k) {
            pw *= dev;
            raw[k] += pw;
        }
    }
    const std::vector<double> kappa = cumulants_from_moments(raw);
    const double c = -chain.ell;
    double scale = c;
    for (std::size_t m = 2; m <= max_order; ++m) {
        scale *= c;
        out[m - 2] = scale * kappa[m - 1];
    }
    return out;
}

double exact_centered_upper_tail(const ChainParams& chain, std::size_t n, double x,
                                 std::size_t cap) {
    if (n == 0) throw DomainError("exact_centered_upper_tail: blocklength must be at least 1");
    const double nn = static_cast<double>(n);
    const double threshold = nn * x;
    if (chain.symmetric()) return threshold <= 0.0 ? 1.0 : 0.0;

    const OccupationPMF pmf = occupation_pmf(chain, n, cap);
    const double slack =
        64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(threshold), nn * std::abs(chain.ell));
    double tail = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
        const double centered = -chain.ell * (static_cast<double>(m) - nn * chain.pi1);
        if (centered >= threshold - slack) tail += pmf.probs[m];
    }
    return std::min(tail, 1.0);
}

}  // namespace dtilt
