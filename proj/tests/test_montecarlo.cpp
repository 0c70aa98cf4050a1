#include <doctest.h>

#include <cmath>
#include <vector>

#include "dtilt/errors.hpp"
#include "dtilt/montecarlo.hpp"

using namespace dtilt;

TEST_CASE("simulate is deterministic in the seed") {
    const ChainParams c = derive_chain(0.1, 0.3);
    const SimReport r1 = simulate(c, DistortionLevel{0.1}, 50, 2000, 7);
    const SimReport r2 = simulate(c, DistortionLevel{0.1}, 50, 2000, 7);
    const SimReport r3 = simulate(c, DistortionLevel{0.1}, 50, 2000, 8);
    CHECK(r1.emp_mean == r2.emp_mean);
    CHECK(r1.emp_var == r2.emp_var);
    CHECK(r1.ks_exact == r2.ks_exact);
    CHECK(r1.emp_var != r3.emp_var);
}

TEST_CASE("simulated moments agree with the exact law") {
    const ChainParams c = derive_chain(0.1, 0.3);
    const DistortionLevel d{0.1};
    const std::size_t n = 50;
    const SimReport r = simulate(c, d, n, 100000, 7);
    const JnLaw law = jn_law(c, d, n);
    const double var = variance_exact(c, n, VarianceMethod::closed_form);
    CHECK(std::abs(r.emp_var - var) <= 4.0 * r.var_std_error);
    CHECK(std::abs(r.emp_mean - law.mean()) <= 4.0 * std::sqrt(var / 100000.0));
    CHECK(r.max_pathwise_gap <= 1e-10);
    CHECK(r.ks_exact < 0.01);
    CHECK(r.replications == 100000);
    CHECK(r.n == n);
}

TEST_CASE("KS distance to the exact law shrinks with replications") {
    const ChainParams c = derive_chain(0.2, 0.4);
    const double small = simulate(c, DistortionLevel{0.05}, 40, 1000, 3).ks_exact;
    const double large = simulate(c, DistortionLevel{0.05}, 40, 100000, 3).ks_exact;
    CHECK(large < small);
    CHECK(large < 0.01);
}

TEST_CASE("symmetric chain has a point-mass sum") {
    const ChainParams c = derive_chain(0.3, 0.3);
    const SimReport r = simulate(c, DistortionLevel{0.2}, 30, 500, 1);
    CHECK(r.emp_var == 0.0);
    CHECK(r.var_std_error == 0.0);
    CHECK(r.ks_exact == 0.0);
    CHECK(r.emp_mean == doctest::Approx(30 * (1.0 - binary_entropy(0.2))).epsilon(1e-12));
}

TEST_CASE("simulate argument checks") {
    const ChainParams c = derive_chain(0.1, 0.3);
    CHECK_THROWS_AS(simulate(c, DistortionLevel{0.1}, 50, kMinReplications - 1, 1), DomainError);
    CHECK_THROWS_AS(simulate(c, DistortionLevel{0.1}, 0, 1000, 1), DomainError);
    CHECK_THROWS_AS(simulate(c, DistortionLevel{0.3}, 50, 1000, 1), RegimeError);
    SimOptions tight;
    tight.budget = 1e4;
    CHECK_THROWS_AS(simulate(c, DistortionLevel{0.1}, 50, 1000, 1, tight), ResourceError);
}

TEST_CASE("exact normal distance") {
    const ChainParams c = derive_chain(0.1, 0.3);
    double prev = 1.0;
    for (std::size_t n : {100u, 400u, 1600u}) {
        const double dist = exact_normal_distance(c, n);
        CHECK(dist < prev);
        CHECK(dist * std::sqrt(static_cast<double>(n)) == doctest::Approx(0.457).epsilon(0.01));
        prev = dist;
    }
    CHECK(exact_normal_distance(derive_chain(0.25, 0.25), 100) == 0.5);
    CHECK(exact_normal_distance(c, 100, true) != exact_normal_distance(c, 100, false));
}

TEST_CASE("clt_distance_sweep") {
    const ChainParams c = derive_chain(0.1, 0.3);
    const std::vector<std::size_t> grid{20, 80, 320};
    const auto a = clt_distance_sweep(c, DistortionLevel{0.05}, grid, 4000, 11);
    const auto b = clt_distance_sweep(c, DistortionLevel{0.2}, grid, 4000, 11);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n == grid[i]);
        // Standardized law is independent of the distortion level.
        CHECK(a[i].exact_distance == b[i].exact_distance);
        CHECK(a[i].ks_normal >= 0.0);
        CHECK(std::abs(a[i].ks_normal - a[i].exact_distance) < 0.05);
    }
    CHECK(a[2].exact_distance < a[0].exact_distance);

    const std::vector<std::size_t> bad{80, 20};
    CHECK_THROWS_AS(clt_distance_sweep(c, DistortionLevel{0.05}, bad, 4000, 11), DomainError);
    CHECK_THROWS_AS(clt_distance_sweep(derive_chain(0.2, 0.2), DistortionLevel{0.05}, grid, 4000, 11), DomainError);
}

TEST_CASE("standard_normal_cdf") {
    CHECK(standard_normal_cdf(0.0) == 0.5);
    CHECK(standard_normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(standard_normal_cdf(-40.0) == 0.0);
}
