#include "commands.hpp"

#include <cmath>
#include <string>

#include "dtilt/cgf_ldp.hpp"
#include "dtilt/exact_dist.hpp"
#include "dtilt/montecarlo.hpp"

namespace dtilt::cli {

namespace {

CommandResult single(Table t) {
    CommandResult r;
    r.tables.push_back(std::move(t));
    return r;
}

}  // namespace

ChainParams require_chain(const RunConfig& c) {
    if (!c.a || !c.b) throw ValidationError(c.command + ": --a and --b are required");
    return derive_chain(*c.a, *c.b);
}

DistortionLevel require_distortion(const RunConfig& c, const ChainParams& chain) {
    if (!c.distortion) throw ValidationError(c.command + ": --distortion is required");
    const DistortionLevel d{*c.distortion};
    check_interior(chain, d);
    return d;
}

std::size_t require_n(const RunConfig& c) {
    if (!c.n) throw ValidationError(c.command + ": --n is required");
    if (*c.n == 0) throw ValidationError(c.command + ": --n must be at least 1");
    return *c.n;
}

double require_x(const RunConfig& c) {
    if (!c.x) throw ValidationError(c.command + ": --x is required");
    return *c.x;
}

CommandResult cmd_jtilt(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const DistortionLevel d = require_distortion(c, chain);
    const BAOperatingPoint bp = ba_operating_point(chain, d);

    Table t;
    t.title = "d-tilted information (bits)";
    t.columns = {"state", "pi", "q", "z", "beta", "jtilt_closed_form", "jtilt_definition"};
    for (int x = 0; x < 2; ++x) {
        t.rows.push_back({static_cast<double>(x), chain.pi(x), bp.q(x), bp.z(x), bp.beta,
                          jtilt(chain, d, x), jtilt_generic(bp, d, x)});
    }
    return single(std::move(t));
}

CommandResult cmd_stats(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const DistortionLevel d = require_distortion(c, chain);
    const TiltedStats s = tilted_stats(chain, d);

    Table t;
    t.title = "chain and tilted-information statistics";
    t.columns = {"a", "b", "pi0", "pi1", "lambda2", "ell", "mu_d", "h_rate", "gap", "v_iid", "v_sl",
                 "amplification"};
    t.rows.push_back({chain.a, chain.b, chain.pi0, chain.pi1, chain.lambda2, chain.ell, s.mu_d, s.h_rate,
                      s.gap, s.v_iid, s.v_sl, (1.0 + chain.lambda2) / (1.0 - chain.lambda2)});
    return single(std::move(t));
}

CommandResult cmd_pmf(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const DistortionLevel d = require_distortion(c, chain);
    const std::size_t n = require_n(c);
    const OccupationPMF pmf = occupation_pmf(chain, n);
    const double nn = static_cast<double>(n);
    const double offset = nn * (-std::log2(chain.pi0) - binary_entropy(d.value));

    Table t;
    t.title = "exact law of N_n and J_n(D)";
    t.columns = {"m", "prob", "j_value"};
    for (std::size_t m = 0; m <= n; ++m) {
        t.rows.push_back({static_cast<double>(m), pmf.probs[m], offset - chain.ell * static_cast<double>(m)});
    }
    return single(std::move(t));
}

CommandResult cmd_variance_table(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    std::vector<std::size_t> grid;
    if (c.n_grid) grid = parse_n_grid(*c.n_grid);
    else if (c.n) grid = {require_n(c)};
    else grid = parse_n_grid("1:50");
    const double v_sl = asymptotic_variance(chain);

    Table t;
    t.title = "exact variance of J_n(D) (any admissible D)";
    t.columns = {"n", "var_double_sum", "var_closed_form", "var_per_letter", "v_sl", "correction"};
    for (std::size_t n : grid) {
        const double closed = variance_exact(chain, n, VarianceMethod::closed_form);
        t.rows.push_back({static_cast<double>(n), variance_exact(chain, n, VarianceMethod::double_sum), closed,
                          closed / static_cast<double>(n), v_sl, variance_correction(chain, n).correction});
    }
    return single(std::move(t));
}

CommandResult cmd_cgf(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const std::size_t n = require_n(c);
    std::vector<double> thetas;
    if (c.theta_grid) thetas = parse_real_grid(*c.theta_grid);
    else if (c.theta) thetas = {*c.theta};
    else thetas = parse_real_grid("-1:1:0.1");

    const CGFCurve curve = cgf_curve(chain, n, thetas);
    Table t;
    t.title = "base-2 CGF of the centered sum, n = " + std::to_string(n);
    t.columns = {"theta", "lambda_n", "lambda_inf"};
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        t.rows.push_back({curve.thetas[i], curve.lambda_n[i], curve.lambda_inf[i]});
    }
    return single(std::move(t));
}

CommandResult cmd_rate(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    if (chain.symmetric()) throw ValidationError("rate: a == b gives a degenerate law");
    std::vector<double> xs;
    if (c.x_grid) xs = parse_real_grid(*c.x_grid);
    else xs = {require_x(c)};
    const AchievableInterval range = achievable_interval(chain);
    for (double x : xs) {
        if (!range.contains(x)) {
            throw ValidationError("rate: x = " + format_number(x) + " outside the achievable interval (" +
                                  format_number(range.lo) + ", " + format_number(range.hi) + ")");
        }
    }

    Table t;
    t.title = "large-deviation rate function (bits)";
    t.columns = {"x", "theta_star", "rate"};
    for (double x : xs) {
        const RatePoint rp = rate_function(chain, x);
        t.rows.push_back({rp.x, rp.theta_star, rp.rate});
    }
    return single(std::move(t));
}

CommandResult cmd_tail(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    if (chain.symmetric()) throw ValidationError("tail: a == b gives a degenerate law");
    const std::size_t n = require_n(c);
    const double x = require_x(c);
    if (!(x > 0.0)) throw ValidationError("tail: --x must be positive");
    if (n > kPmfCap) throw ValidationError("tail: --n exceeds the exact-law cap " + std::to_string(kPmfCap));
    if (!achievable_interval(chain).contains(x)) throw ValidationError("tail: x outside the achievable interval");

    const double exact = exact_centered_upper_tail(chain, n, x);
    const SaddlepointTail sp = saddlepoint_tail(chain, n, x);
    const double nn = static_cast<double>(n);

    Table t;
    t.title = "Pr(J_n - n mu_D >= n x)";
    t.columns = {"n", "x", "exact_tail", "saddlepoint", "ratio", "exact_exponent", "rate", "theta_star",
                 "regime"};
    t.rows.push_back({nn, x, exact, sp.probability, sp.probability / exact, -std::log2(exact) / nn, sp.rate,
                      sp.theta_star, std::string(sp.near_gaussian ? "near-gaussian" : "tilted")});
    return single(std::move(t));
}

CommandResult cmd_simulate(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const DistortionLevel d = require_distortion(c, chain);
    const std::size_t n = require_n(c);
    if (c.replications < kMinReplications) {
        throw ValidationError("simulate: --reps must be at least " + std::to_string(kMinReplications));
    }
    SimOptions opts;
    opts.finite_n_standardization = c.finite_n;
    const SimReport r = simulate(chain, d, n, c.replications, c.seed, opts);
    const double nn = static_cast<double>(n);

    Table t;
    t.title = "Monte Carlo report";
    t.columns = {"n", "replications", "seed", "emp_mean", "exact_mean", "emp_var", "exact_var", "var_std_error",
                 "emp_var_per_letter", "ks_exact", "ks_normal", "max_pathwise_gap"};
    t.rows.push_back({nn, static_cast<double>(r.replications), std::to_string(r.seed), r.emp_mean,
                      nn * tilted_stats(chain, d).mu_d, r.emp_var,
                      variance_exact(chain, n, VarianceMethod::closed_form), r.var_std_error, r.emp_var / nn,
                      r.ks_exact, r.ks_normal, r.max_pathwise_gap});
    return single(std::move(t));
}

CommandResult cmd_figure(const RunConfig& c) {
    const ChainParams chain = require_chain(c);
    const std::vector<std::size_t> grid = parse_n_grid(c.n_grid.value_or("1:200"));
    const double v_sl = asymptotic_variance(chain);
    const double v_iid = single_letter_variance(chain);

    Table t;
    t.columns = {"n", "var_per_letter", "v_sl", "v_iid"};
    for (std::size_t n : grid) {
        t.rows.push_back({static_cast<double>(n),
                          variance_exact(chain, n, VarianceMethod::closed_form) / static_cast<double>(n), v_sl,
                          v_iid});
    }
    return single(std::move(t));
}

}  // namespace dtilt::cli
