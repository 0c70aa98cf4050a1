#include "dtilt/oracle.hpp"

#include <cmath>
#include <string>

#include "dtilt/errors.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt {

namespace {

void check_oracle_size(std::size_t n) {
    if (n == 0 || n > kOracleMaxN) {
        throw ResourceError("oracle: n = " + std::to_string(n) + " outside [1, " +
                            std::to_string(kOracleMaxN) + "]");
    }
}

// Tight enough that the iterated operating point sits at the fixed point to
// a few ulps.
constexpr double kOracleBaTol = 1e-15;

}  // namespace

OracleResult enumerate_pmf(const ChainParams& chain, std::size_t n, std::span<const double> pgf_points) {
    check_oracle_size(n);
    PathSums sums = parallel::enumerate_paths(chain, n, pgf_points);

    OracleResult r;
    r.n = n;
    r.paths = std::size_t{1} << n;
    r.pmf = std::move(sums.pmf);
    for (std::size_t m = 0; m <= n; ++m) r.mean += static_cast<double>(m) * r.pmf[m];
    for (std::size_t m = 0; m <= n; ++m) {
        const double dev = static_cast<double>(m) - r.mean;
        r.var += r.pmf[m] * dev * dev;
    }
    r.mgf_samples.reserve(pgf_points.size());
    for (std::size_t i = 0; i < pgf_points.size(); ++i) r.mgf_samples.emplace_back(pgf_points[i], sums.pgf[i]);
    return r;
}

OracleVariance oracle_variance(const ChainParams& chain, DistortionLevel d, std::size_t n) {
    check_oracle_size(n);
    check_interior(chain, d);

    OracleVariance out;

    // Route 1: enumerated PMF of N_n pushed through J = offset - ell * N.
    const OracleResult counts = enumerate_pmf(chain, n);
    const double nn = static_cast<double>(n);
    const double offset = nn * (-std::log2(chain.pi0) - binary_entropy(d.value));
    double mean = 0.0;
    for (std::size_t m = 0; m <= n; ++m) mean += counts.pmf[m] * (offset - chain.ell * static_cast<double>(m));
    for (std::size_t m = 0; m <= n; ++m) {
        const double dev = offset - chain.ell * static_cast<double>(m) - mean;
        out.via_pmf += counts.pmf[m] * dev * dev;
    }

    // Route 2: letter-by-letter sums of the defining expression at the
    // iterated operating point.
    const BAOperatingPoint point = ba_fixed_point_iterate(chain, d, kOracleBaTol).point;
    const double j0 = jtilt_generic(point, d, 0);
    const double j1 = jtilt_generic(point, d, 1);
    const PathMoments first = parallel::path_moments(chain, n, j0, j1, nn * j0);
    const double path_mean = nn * j0 + first.mean_shift;
    const PathMoments second = parallel::path_moments(chain, n, j0, j1, path_mean);
    out.via_paths = second.second_shift - second.mean_shift * second.mean_shift;
    return out;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DomainError("total_variation: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace dtilt
