// Acceptance run: one line per criterion, nonzero exit if any fails.
//
//   dtilt_acceptance [criterion-number]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "dtilt/ba_tilt.hpp"
#include "dtilt/cgf_ldp.hpp"
#include "dtilt/exact_dist.hpp"
#include "dtilt/montecarlo.hpp"
#include "dtilt/oracle.hpp"

using namespace dtilt;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

Verdict variance_table() {
    const ChainParams c = derive_chain(0.1, 0.3);
    const std::pair<std::size_t, double> rows[] = {{1, 0.471}, {2, 0.754}, {5, 1.232}, {10, 1.533}, {50, 1.813}};
    double worst = std::abs(asymptotic_variance(c) - 1.884);
    for (const auto& [n, golden] : rows) {
        const double v = variance_exact(c, n, VarianceMethod::closed_form) / static_cast<double>(n);
        worst = std::max(worst, std::abs(v - golden));
    }
    return {worst <= 5e-4, fmt("max |err| %.2e (tol 5e-4)", worst)};
}

Verdict three_sources() {
    struct Row {
        double a, b, gap, v_sl, amp;
    };
    const Row rows[] = {{0.25, 0.75, 0.0, 0.471, 1.0}, {0.1, 0.3, 0.239, 1.884, 4.0}, {0.01, 0.03, 0.702, 23.08, 49.0}};
    double value_err = 0.0, ratio_err = 0.0;
    for (const Row& r : rows) {
        const ChainParams c = derive_chain(r.a, r.b);
        const double v_sl = asymptotic_variance(c);
        value_err = std::max(value_err, std::abs(binary_entropy(c.pi1) - entropy_rate(c) - r.gap));
        value_err = std::max(value_err, std::abs(v_sl - r.v_sl));
        ratio_err = std::max(ratio_err, std::abs(v_sl / single_letter_variance(c) - r.amp));
    }
    return {value_err <= 5e-4 && ratio_err <= 1e-9,
            fmt("max value err %.2e (tol 5e-4), max ratio err %.2e (tol 1e-9)", value_err, ratio_err)};
}

Verdict correction_constant() {
    const double constant = variance_correction(derive_chain(0.1, 0.3), 1).constant;
    return {std::abs(constant - 3.53) <= 5e-3, fmt("C = %.5f (3.53 +- 5e-3)", constant)};
}

Verdict oracle_equivalence() {
    const double grid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    double tv = 0.0, var = 0.0;
    for (double a : grid) {
        for (double b : grid) {
            const ChainParams c = derive_chain(a, b);
            const double d = 0.5 * std::min(c.pi0, c.pi1);
            for (std::size_t n = 1; n <= 16; ++n) {
                tv = std::max(tv, total_variation(enumerate_pmf(c, n).pmf, occupation_pmf(c, n).probs));
                const double closed = variance_exact(c, n, VarianceMethod::closed_form);
                var = std::max(var, rel_err(oracle_variance(c, DistortionLevel{d}, n).via_paths, closed));
            }
        }
    }
    return {tv <= 1e-12 && var <= 1e-10, fmt("max TV %.2e (tol 1e-12), max variance rel err %.2e (tol 1e-10)", tv, var)};
}

Verdict formula_agreement() {
    const std::pair<double, double> chains[] = {{0.1, 0.3}, {0.01, 0.03}, {0.7, 0.9}, {0.95, 0.6}, {0.5, 0.5}};
    double worst = 0.0;
    for (const auto& [a, b] : chains) {
        const ChainParams c = derive_chain(a, b);
        for (std::size_t n : {1u, 2u, 10u, 100u, 10000u}) {
            worst = std::max(worst, rel_err(variance_exact(c, n, VarianceMethod::double_sum),
                                            variance_exact(c, n, VarianceMethod::closed_form)));
        }
    }
    return {worst <= 1e-10, fmt("max rel err %.2e (tol 1e-10)", worst)};
}

Verdict d_invariance() {
    const ChainParams c = derive_chain(0.1, 0.3);
    const std::size_t n = 20;
    const auto k_lo = centered_cumulants(c, DistortionLevel{0.05}, n, 6);
    const auto k_hi = centered_cumulants(c, DistortionLevel{0.2}, n, 6);
    double cum = 0.0;
    for (std::size_t i = 0; i < k_lo.size(); ++i) cum = std::max(cum, std::abs(k_lo[i] - k_hi[i]));
    const JnLaw lo = jn_law(c, DistortionLevel{0.05}, n);
    const JnLaw hi = jn_law(c, DistortionLevel{0.2}, n);
    const double shift = static_cast<double>(n) * (binary_entropy(0.2) - binary_entropy(0.05));
    double support = 0.0;
    for (std::size_t m = 0; m < lo.support.size(); ++m) {
        support = std::max(support, std::abs(lo.support[m] - hi.support[m] - shift));
    }
    return {k_lo.size() == 5 && cum <= 1e-12 && support <= 1e-12,
            fmt("max cumulant diff %.2e, max support shift err %.2e (tol 1e-12)", cum, support)};
}

double cgf_from_pmf(const ChainParams& c, std::size_t n, double theta) {
    const OccupationPMF p = occupation_pmf(c, n);
    double s = 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
        s += p.probs[m] * std::exp2(-theta * c.ell * (static_cast<double>(m) - static_cast<double>(n) * c.pi1));
    }
    return std::log2(s) / static_cast<double>(n);
}

Verdict cgf_identities() {
    const ChainParams c = derive_chain(0.1, 0.3);
    const double at_zero = std::max({std::abs(cgf_finite(c, 100, 0.0)), std::abs(cgf_limit(c, 0.0))});
    const double perron = std::abs(perron_root(c, 1.0) - 1.0);
    bool decreasing = true;
    for (double theta : {-1.0, 0.5, 1.0}) {
        double prev = INFINITY;
        for (std::size_t n : {256u, 1024u, 4096u}) {
            const double gap = std::abs(cgf_finite(c, n, theta) - cgf_limit(c, theta));
            decreasing = decreasing && gap < prev;
            prev = gap;
        }
    }
    double transfer = 0.0;
    for (std::size_t n = 1; n <= 16; ++n) {
        for (double theta : {-1.0, -0.3, 0.3, 1.0}) {
            transfer = std::max(transfer, std::abs(cgf_finite(c, n, theta) - cgf_from_pmf(c, n, theta)));
        }
    }
    return {at_zero <= 1e-12 && perron <= 1e-14 && decreasing && transfer <= 1e-10,
            fmt("|Lambda(0)| %.1e, |lambda+(1)-1| %.1e, transfer vs PMF %.2e", at_zero, perron, transfer) +
                (decreasing ? ", gaps decreasing" : ", gaps NOT decreasing")};
}

Verdict rate_function_checks() {
    const ChainParams c = derive_chain(0.1, 0.3);
    const double i0 = rate_function(c, 0.0).rate;
    double residual = 0.0;
    for (int k = -20; k <= 20; ++k) {
        const double theta = 0.1 * k;
        const double x = cgf_limit_derivative(c, theta);
        residual = std::max(residual, std::abs(rate_function(c, x).rate - (theta * x - cgf_limit(c, theta))));
    }
    const double x = 0.2;
    const double rate = rate_function(c, x).rate;
    bool monotone = true;
    double prev = INFINITY, last = 0.0;
    for (std::size_t n : {500u, 1000u, 2000u}) {
        last = -std::log2(exact_centered_upper_tail(c, n, x)) / static_cast<double>(n);
        const double dist = std::abs(last - rate);
        monotone = monotone && dist < prev;
        prev = dist;
    }
    return {i0 == 0.0 && residual <= 1e-8 && monotone,
            fmt("I(0) = %g, Legendre residual %.2e (tol 1e-8), exponent(2000) %.5f", i0, residual, last) +
                fmt(" vs I(0.2) %.5f", rate) + (monotone ? ", monotone" : ", NOT monotone")};
}

Verdict saddlepoint_envelope() {
    const ChainParams c = derive_chain(0.1, 0.3);
    const double r200 = saddlepoint_tail(c, 200, 0.2).probability / exact_centered_upper_tail(c, 200, 0.2);
    const double r800 = saddlepoint_tail(c, 800, 0.2).probability / exact_centered_upper_tail(c, 800, 0.2);
    const bool pass = r200 >= 0.5 && r200 <= 2.0 && std::abs(std::log(r800)) < std::abs(std::log(r200));
    return {pass, fmt("ratio %.4f at n=200 (band [0.5, 2]), %.4f at n=800", r200, r800)};
}

Verdict monte_carlo() {
    const std::size_t n = 50;
    const SimReport r = simulate(derive_chain(0.1, 0.3), DistortionLevel{0.1}, n, 100000, 7);
    const double per_letter = r.emp_var / static_cast<double>(n);
    const double se = r.var_std_error / static_cast<double>(n);
    const double z = std::abs(per_letter - 1.813) / se;
    const SimReport sym = simulate(derive_chain(0.3, 0.3), DistortionLevel{0.1}, n, 1000, 7);
    return {z <= 3.0 && r.max_pathwise_gap <= 1e-10 && sym.emp_var == 0.0,
            fmt("emp_var/n %.5f, %.2f SE from 1.813 (tol 3)", per_letter, z) +
                fmt(", pathwise gap %.1e, symmetric var %g", r.max_pathwise_gap, sym.emp_var)};
}

Verdict clt_distance() {
    const ChainParams c = derive_chain(0.1, 0.3);
    std::vector<double> scaled;
    bool decreasing = true;
    double prev = INFINITY;
    for (std::size_t n : {100u, 400u, 1600u}) {
        const double d = exact_normal_distance(c, n);
        decreasing = decreasing && d < prev;
        prev = d;
        scaled.push_back(d * std::sqrt(static_cast<double>(n)));
    }
    const double mean = (scaled[0] + scaled[1] + scaled[2]) / 3.0;
    double spread = 0.0;
    for (double s : scaled) spread = std::max(spread, std::abs(s - mean) / mean);
    return {decreasing && spread <= 0.2,
            fmt("sqrt(n) * distance = %.4f, %.4f, %.4f", scaled[0], scaled[1], scaled[2]) +
                fmt(" (max deviation %.1f%%, band 20%%)", 100.0 * spread)};
}

}  // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    struct Criterion {
        const char* name;
        std::function<Verdict()> check;
        double budget_seconds;  // wall-clock limit, infinite when none is pinned
    };
    const Criterion criteria[] = {
        {"variance table", variance_table, 1.0},
        {"three-source table", three_sources, 1.0},
        {"correction constant", correction_constant, INFINITY},
        {"oracle equivalence", oracle_equivalence, 60.0},
        {"variance formula agreement", formula_agreement, INFINITY},
        {"distortion invariance", d_invariance, INFINITY},
        {"CGF identities", cgf_identities, INFINITY},
        {"rate function", rate_function_checks, INFINITY},
        {"saddlepoint envelope", saddlepoint_envelope, INFINITY},
        {"Monte Carlo consistency", monte_carlo, INFINITY},
        {"normal approximation distance", clt_distance, INFINITY},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [name, check, budget] : criteria) {
        ++index;
        if (only != 0 && index != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > budget) {
            v.pass = false;
            v.detail += fmt(", over the %.0f s budget", budget);
        }
        if (!v.pass) ++failures;
        std::printf("%-4s %2d %-30s %s [%.3f s]\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str(), seconds);
    }
    if (only == 0) std::printf("%d of %d criteria passed\n", index - failures, index);
    if (only < 0 || only > index) {
        std::printf("no criterion %d\n", only);
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
