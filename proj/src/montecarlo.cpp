#include "dtilt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dtilt/counter_rng.hpp"
#include "dtilt/errors.hpp"
#include "dtilt/kernels.hpp"

namespace dtilt {

namespace {

// Atoms of the centered law -ell (m - n pi1) in increasing order of value.
std::vector<std::size_t> ascending_counts(const ChainParams& chain, std::size_t n) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t m = 0; m <= n; ++m) order[m] = -chain.ell > 0.0 ? m : n - m;
    return order;
}

// sup_z |F(z) - Phi(z)| for a discrete law with atoms z (ascending) and masses p.
double sup_distance_to_normal(const std::vector<double>& z, const std::vector<double>& p) {
    double below = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double phi = standard_normal_cdf(z[i]);
        const double above = below + p[i];
        worst = std::max({worst, std::abs(below - phi), std::abs(above - phi)});
        below = above;
    }
    return std::min(worst, 1.0);
}

// Law of (J_n - n mu_D)/sqrt(n v) given masses indexed by occupation count.
double normal_distance_from_counts(const ChainParams& chain, std::size_t n, double v,
                                   const std::vector<double>& mass_by_count) {
    if (!(v > 0.0)) return 0.5;
    const double nn = static_cast<double>(n);
    const double scale = std::sqrt(nn * v);
    std::vector<double> z, p;
    z.reserve(n + 1);
    p.reserve(n + 1);
    for (std::size_t m : ascending_counts(chain, n)) {
        z.push_back(-chain.ell * (static_cast<double>(m) - nn * chain.pi1) / scale);
        p.push_back(mass_by_count[m]);
    }
    return sup_distance_to_normal(z, p);
}

double standardizing_variance(const ChainParams& chain, std::size_t n, bool finite_n) {
    if (finite_n) return variance_exact(chain, n, VarianceMethod::closed_form) / static_cast<double>(n);
    return asymptotic_variance(chain);
}

}  // namespace

double standard_normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

SimReport simulate(const ChainParams& chain, DistortionLevel d, std::size_t n,
                   std::size_t replications, std::uint64_t seed, const SimOptions& options) {
    check_interior(chain, d);
    if (n == 0) throw DomainError("simulate: blocklength must be at least 1");
    if (replications < kMinReplications) {
        throw DomainError("simulate: need at least " + std::to_string(kMinReplications) +
                          " replications, got " + std::to_string(replications));
    }
    const double work = static_cast<double>(replications) * static_cast<double>(n);
    if (work > options.budget) {
        throw ResourceError("simulate: replications * n = " + std::to_string(work) +
                            " exceeds the budget " + std::to_string(options.budget));
    }

    const double nn = static_cast<double>(n);
    const double j0 = jtilt(chain, d, 0);
    const double j1 = jtilt(chain, d, 1);
    const double offset = nn * (-std::log2(chain.pi0) - binary_entropy(d.value));
    const std::vector<ReplicationSample> samples =
        parallel::simulate_replications(chain, n, j0, j1, offset, replications, seed);

    SimReport rep;
    rep.n = n;
    rep.replications = replications;
    rep.seed = seed;

    // Shifted-data moments: a constant sample gives exactly zero variance.
    const double shift = samples.front().j_letters;
    double s1 = 0.0;
    double s2 = 0.0;
    std::vector<double> by_count(n + 1, 0.0);
    for (const ReplicationSample& s : samples) {
        const double dev = s.j_letters - shift;
        s1 += dev;
        s2 += dev * dev;
        rep.max_pathwise_gap = std::max(rep.max_pathwise_gap, std::abs(s.j_letters - s.j_occupation));
        by_count[s.ones] += 1.0;
    }
    const double r = static_cast<double>(replications);
    rep.emp_mean = shift + s1 / r;
    rep.emp_var = std::max(0.0, (s2 - s1 * s1 / r) / (r - 1.0));

    double m4 = 0.0;
    for (const ReplicationSample& s : samples) {
        const double dev = s.j_letters - rep.emp_mean;
        m4 += dev * dev * dev * dev;
    }
    m4 /= r;
    rep.var_std_error = std::sqrt(std::max(0.0, m4 - rep.emp_var * rep.emp_var) / r);

    for (double& c : by_count) c /= r;

    if (chain.symmetric()) {
        // Every path has the same J_n: the sample is the exact point mass.
        rep.ks_exact = 0.0;
        rep.ks_normal = 0.5;
        return rep;
    }

    const OccupationPMF exact = occupation_pmf(chain, n);
    double emp_cdf = 0.0;
    double exact_cdf = 0.0;
    for (std::size_t m : ascending_counts(chain, n)) {
        emp_cdf += by_count[m];
        exact_cdf += exact.probs[m];
        rep.ks_exact = std::max(rep.ks_exact, std::abs(emp_cdf - exact_cdf));
    }
    rep.ks_exact = std::min(rep.ks_exact, 1.0);
    rep.ks_normal = normal_distance_from_counts(
        chain, n, standardizing_variance(chain, n, options.finite_n_standardization), by_count);
    return rep;
}

double exact_normal_distance(const ChainParams& chain, std::size_t n, bool finite_n_standardization) {
    if (n == 0) throw DomainError("exact_normal_distance: blocklength must be at least 1");
    if (chain.symmetric()) return 0.5;
    const OccupationPMF exact = occupation_pmf(chain, n);
    return normal_distance_from_counts(
        chain, n, standardizing_variance(chain, n, finite_n_standardization), exact.probs);
}

std::vector<CltPoint> clt_distance_sweep(const ChainParams& chain, DistortionLevel d,
                                         std::span<const std::size_t> n_grid,
                                         std::size_t replications, std::uint64_t seed) {
    if (chain.symmetric()) throw DomainError("clt_distance_sweep: degenerate chain (a == b)");
    if (n_grid.empty()) throw DomainError("clt_distance_sweep: empty blocklength grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i) {
        if (n_grid[i] <= n_grid[i - 1]) throw DomainError("clt_distance_sweep: n_grid must increase");
    }
    std::vector<CltPoint> out;
    out.reserve(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const std::size_t n = n_grid[i];
        const SimReport rep = simulate(chain, d, n, replications, derive_stream(seed, i));
        out.push_back({n, rep.ks_normal, exact_normal_distance(chain, n)});
    }
    return out;
}

}  // namespace dtilt
