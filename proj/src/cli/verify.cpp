#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "commands.hpp"
#include "dtilt/cgf_ldp.hpp"
#include "dtilt/exact_dist.hpp"
#include "dtilt/oracle.hpp"

namespace dtilt::cli {

namespace {

struct Suite {
    std::string name;
    std::size_t cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;

    void record(double err) {
        ++cases;
        // NaN must fail the suite.
        max_error = std::isnan(err) || std::isnan(max_error) ? NAN : std::max(max_error, err);
    }
    [[nodiscard]] bool passed() const { return cases > 0 && max_error <= tolerance; }
};

double rel_error(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

// Relative error with an absolute floor for quantities that vanish (a == b).
double rel_or_abs(double value, double reference, double floor) {
    const double diff = std::abs(value - reference);
    if (std::abs(reference) < floor) return diff <= floor ? 0.0 : diff;
    return diff / std::abs(reference);
}

std::vector<double> admissible_distortions(const RunConfig& c, const ChainParams& chain) {
    std::vector<double> out;
    if (c.distortion) {
        out.push_back(*c.distortion);
        return out;
    }
    for (double d : {0.05, 0.1, 0.2}) {
        if (d < std::min(chain.pi0, chain.pi1)) out.push_back(d);
    }
    return out;
}

}  // namespace

CommandResult cmd_verify(const RunConfig& c) {
    std::vector<std::pair<double, double>> pairs;
    if (c.a || c.b) {
        const ChainParams chain = require_chain(c);
        if (c.distortion) check_interior(chain, DistortionLevel{*c.distortion});
        pairs.emplace_back(chain.a, chain.b);
    } else {
        for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
            for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) pairs.emplace_back(a, b);
    }
    // Sensitivity self-test: scale the closed-form variance.
    const double perturb = 1.0 + c.perturb;

    Suite oracle_pmf{"oracle_pmf_tv", 0, 0.0, 1e-12};
    Suite oracle_var{"oracle_variance_vs_closed_form", 0, 0.0, 1e-10};
    Suite var_forms{"variance_double_sum_vs_closed_form", 0, 0.0, 1e-10};
    Suite pgf_pmf{"pgf_vs_pmf", 0, 0.0, 1e-10};
    Suite d_inv{"d_invariance", 0, 0.0, 1e-12};
    Suite cgf_pmf{"cgf_transfer_vs_pmf", 0, 0.0, 1e-10};
    Suite cgf_zero{"cgf_at_zero", 0, 0.0, 1e-12};
    Suite legendre{"legendre_inversion", 0, 0.0, 1e-8};

    for (const auto& [a, b] : pairs) {
        const ChainParams chain = derive_chain(a, b);
        const std::vector<double> ds = admissible_distortions(c, chain);

        for (std::size_t n = 1; n <= 16; ++n) {
            const OracleResult brute = enumerate_pmf(chain, n);
            const OccupationPMF dp = occupation_pmf(chain, n);
            oracle_pmf.record(total_variation(brute.pmf, dp.probs));

            const double closed = variance_exact(chain, n, VarianceMethod::closed_form) * perturb;
            for (double d : ds) {
                const OracleVariance ov = oracle_variance(chain, DistortionLevel{d}, n);
                oracle_var.record(rel_or_abs(ov.via_paths, closed, 1e-20));
            }

            if (!chain.symmetric()) {
                for (double theta : {-1.0, -0.3, 0.3, 1.0}) {
                    double mgf = 0.0;
                    for (std::size_t m = 0; m <= n; ++m) {
                        const double centered = -chain.ell * (static_cast<double>(m) - static_cast<double>(n) * chain.pi1);
                        mgf += dp.probs[m] * std::exp2(theta * centered);
                    }
                    cgf_pmf.record(std::abs(cgf_finite(chain, n, theta) - std::log2(mgf) / static_cast<double>(n)));
                }
            }
        }

        for (std::size_t n : {1, 2, 10, 100, 10000}) {
            const double closed = variance_exact(chain, n, VarianceMethod::closed_form) * perturb;
            const double sum = variance_exact(chain, n, VarianceMethod::double_sum);
            var_forms.record(rel_or_abs(sum, closed, 1e-20));
        }

        for (std::size_t n : {1, 5, 20, 200}) {
            const OccupationPMF dp = occupation_pmf(chain, n);
            for (double u : {0.5, 1.0, 2.0}) {
                double direct = 0.0;
                for (std::size_t m = 0; m <= n; ++m) direct += dp.probs[m] * std::pow(u, static_cast<double>(m));
                pgf_pmf.record(rel_error(occupation_pgf(chain, n, u).value(), direct));
            }
        }

        if (!ds.empty()) {
            const std::size_t n = 20;
            const DistortionLevel d1{ds.front()};
            const DistortionLevel d2{ds.size() >= 2 ? ds.back() : 0.5 * ds.front()};
            const auto k1 = centered_cumulants(chain, d1, n, 6);
            const auto k2 = centered_cumulants(chain, d2, n, 6);
            for (std::size_t i = 0; i < k1.size(); ++i) d_inv.record(rel_or_abs(k1[i], k2[i], 1e-300));
            const JnLaw l1 = jn_law(chain, d1, n);
            const JnLaw l2 = jn_law(chain, d2, n);
            const double shift = static_cast<double>(n) * (binary_entropy(d2.value) - binary_entropy(d1.value));
            for (std::size_t i = 0; i < l1.support.size(); ++i) {
                d_inv.record(std::abs((l1.support[i] - l2.support[i]) - shift));
                d_inv.record(std::abs(l1.probs[i] - l2.probs[i]));
            }
        }

        cgf_zero.record(std::abs(perron_root(chain, 1.0) - 1.0));
        cgf_zero.record(std::abs(cgf_limit(chain, 0.0)));
        for (std::size_t n : {1, 16, 256}) cgf_zero.record(std::abs(cgf_finite(chain, n, 0.0)));

        if (!chain.symmetric()) {
            for (double theta : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
                const double x = cgf_limit_derivative(chain, theta);
                const RatePoint rp = rate_function(chain, x);
                legendre.record(std::abs(rp.rate + cgf_limit(chain, theta) - theta * x));
            }
        }
    }

    const std::vector<Suite> suites = {oracle_pmf, oracle_var, var_forms, pgf_pmf,
                                       d_inv,      cgf_pmf,    cgf_zero,  legendre};
    CommandResult res;
    Table t;
    t.title = "verification over " + std::to_string(pairs.size()) + " chain(s)";
    t.columns = {"suite", "cases", "max_error", "tolerance", "verdict"};
    nlohmann::ordered_json doc;
    doc["command"] = "verify";
    nlohmann::ordered_json flags = nlohmann::ordered_json::object();
    nlohmann::ordered_json details = nlohmann::ordered_json::array();
    for (const Suite& s : suites) {
        const bool ok = s.passed();
        res.passed = res.passed && ok;
        t.rows.push_back({s.name, static_cast<double>(s.cases), s.max_error, s.tolerance,
                          std::string(ok ? "PASS" : "FAIL")});
        flags[s.name] = ok;
        nlohmann::ordered_json dj;
        dj["suite"] = s.name;
        dj["cases"] = s.cases;
        if (std::isfinite(s.max_error)) dj["max_error"] = s.max_error;
        else dj["max_error"] = format_number(s.max_error);
        dj["tolerance"] = s.tolerance;
        dj["pass"] = ok;
        details.push_back(std::move(dj));
    }
    doc["pass"] = res.passed;
    doc["perturb"] = c.perturb;
    doc["suites"] = std::move(flags);
    doc["details"] = std::move(details);
    res.json = doc.dump(2) + "\n";
    res.tables = {t};

    std::string text = t.title + "\n";
    for (const Suite& s : suites) {
        text += "  " + s.name + ": max error " + format_number(s.max_error) + " over " + std::to_string(s.cases) +
                " cases (tol " + format_number(s.tolerance) + "): " + (s.passed() ? "PASS" : "FAIL") + "\n";
    }
    text += std::string("overall: ") + (res.passed ? "PASS" : "FAIL") + "\n";
    res.text = text;
    return res;
}

}  // namespace dtilt::cli
