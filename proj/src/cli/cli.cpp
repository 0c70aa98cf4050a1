#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <system_error>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dtilt/errors.hpp"

namespace dtilt::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 1000000;

std::vector<std::string> split_colon(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return parts;
}

template <typename T>
T parse_value(const std::string& text, const std::string& spec) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ValidationError("malformed grid '" + spec + "'");
    }
    return v;
}

using Handler = CommandResult (*)(const RunConfig&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"jtilt", cmd_jtilt},
        {"stats", cmd_stats},
        {"pmf", cmd_pmf},
        {"variance-table", cmd_variance_table},
        {"cgf", cmd_cgf},
        {"rate", cmd_rate},
        {"tail", cmd_tail},
        {"simulate", cmd_simulate},
        {"verify", cmd_verify},
        {"paper-tables", cmd_paper_tables},
        {"figure", cmd_figure},
    };
    return table;
}

OutputFormat default_format(const std::string& command) {
    return command == "figure" ? OutputFormat::csv : OutputFormat::table;
}

}  // namespace

std::vector<std::size_t> parse_n_grid(const std::string& spec) {
    const auto parts = split_colon(spec);
    if (parts.empty() || parts.size() > 3) throw ValidationError("grid must be start:stop[:step], got '" + spec + "'");
    const auto start = parse_value<std::size_t>(parts[0], spec);
    const auto stop = parts.size() >= 2 ? parse_value<std::size_t>(parts[1], spec) : start;
    const auto step = parts.size() == 3 ? parse_value<std::size_t>(parts[2], spec) : std::size_t{1};
    if (start == 0 || stop < start || step == 0) throw ValidationError("invalid blocklength grid '" + spec + "'");
    if ((stop - start) / step + 1 > kMaxGridPoints) throw ValidationError("grid '" + spec + "' is too large");
    std::vector<std::size_t> out;
    for (std::size_t n = start; n <= stop; n += step) out.push_back(n);
    return out;
}

std::vector<double> parse_real_grid(const std::string& spec) {
    const auto parts = split_colon(spec);
    if (parts.empty() || parts.size() > 3) throw ValidationError("grid must be start:stop[:step], got '" + spec + "'");
    const double start = parse_value<double>(parts[0], spec);
    const double stop = parts.size() >= 2 ? parse_value<double>(parts[1], spec) : start;
    const double step = parts.size() == 3 ? parse_value<double>(parts[2], spec) : 1.0;
    if (!std::isfinite(start) || !std::isfinite(stop) || stop < start || !(step > 0.0)) {
        throw ValidationError("invalid grid '" + spec + "'");
    }
    const double span = (stop - start) / step;
    if (span + 1.0 > static_cast<double>(kMaxGridPoints)) throw ValidationError("grid '" + spec + "' is too large");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto it = handlers().find(config.command);
    if (it == handlers().end()) {
        err << "unknown command '" << config.command << "'\n";
        return kExitValidation;
    }
    if (config.perturb != 0.0 && config.command != "verify") {
        err << "--perturb is only accepted by verify\n";
        return kExitValidation;
    }

    CommandResult result;
    try {
        result = it->second(config);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const OrderError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }

    const OutputFormat format = config.format.value_or(default_format(config.command));
    std::string body;
    if (format == OutputFormat::json && !result.json.empty()) body = result.json;
    else if (format == OutputFormat::table && !result.text.empty()) body = result.text;
    else body = render(result.tables, format);

    if (config.out_path) {
        std::ofstream file(*config.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open '" << *config.out_path << "' for writing\n";
            return kExitIo;
        }
        file << body;
        file.flush();
        if (!file) {
            err << "error: failed writing '" << *config.out_path << "'\n";
            return kExitIo;
        }
    } else {
        out << body;
    }
    return result.passed ? kExitOk : kExitVerifyFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact fluctuation theory of the d-tilted information sum for binary Markov sources", "dtilt"};
    app.require_subcommand(1);

    RunConfig cfg;
    double a = 0, b = 0, d = 0, theta = 0, x = 0;
    std::size_t n = 0;
    std::string n_grid, theta_grid, x_grid, format, out_path;

    struct Bound {
        CLI::Option* a = nullptr;
        CLI::Option* b = nullptr;
        CLI::Option* d = nullptr;
        CLI::Option* n = nullptr;
        CLI::Option* n_grid = nullptr;
        CLI::Option* theta = nullptr;
        CLI::Option* theta_grid = nullptr;
        CLI::Option* x = nullptr;
        CLI::Option* x_grid = nullptr;
        CLI::Option* format = nullptr;
        CLI::Option* out = nullptr;
    };
    std::map<std::string, Bound> bound;

    const std::pair<const char*, const char*> commands[] = {
        {"jtilt", "d-tilted information of each state, closed form and definition"},
        {"stats", "mean, entropy rate, redundancy gap and variances"},
        {"pmf", "exact law of the occupation count and of J_n(D)"},
        {"variance-table", "exact Var(J_n) over a blocklength grid"},
        {"cgf", "finite-n and limiting cumulant generating functions"},
        {"rate", "large-deviation rate function"},
        {"tail", "exact upper tail vs saddlepoint estimate"},
        {"simulate", "Monte Carlo check against the exact law"},
        {"verify", "oracle and formula-agreement self-checks"},
        {"paper-tables", "reproduce the published variance and three-source tables"},
        {"figure", "per-letter variance series as CSV"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        Bound& bo = bound[name];
        bo.a = sub->add_option("--a", a, "0->1 transition probability");
        bo.b = sub->add_option("--b", b, "1->0 transition probability");
        bo.d = sub->add_option("--distortion,-D", d, "Hamming distortion level");
        bo.n = sub->add_option("--n", n, "blocklength");
        bo.n_grid = sub->add_option("--n-grid", n_grid, "blocklengths start:stop[:step]");
        bo.theta = sub->add_option("--theta", theta, "tilt parameter (1/bits)");
        bo.theta_grid = sub->add_option("--theta-grid", theta_grid, "tilts start:stop:step");
        bo.x = sub->add_option("--x", x, "centered per-letter value (bits)");
        bo.x_grid = sub->add_option("--x-grid", x_grid, "values start:stop:step");
        sub->add_option("--reps", cfg.replications, "Monte Carlo replications");
        sub->add_option("--seed", cfg.seed, "random seed");
        bo.format = sub->add_option("--format", format, "table | csv | json")
                        ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_flag_function("--json", [&](std::int64_t) { format = "json"; }, "shorthand for --format json");
        bo.out = sub->add_option("--out", out_path, "write output to PATH");
        sub->add_option("--perturb", cfg.perturb, "scale the closed-form variance by 1+EPS (verify only)");
        sub->add_flag("--finite-n", cfg.finite_n, "standardize by Var(J_n)/n instead of V_sl (simulate)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::ostringstream sink;
        const int code = app.exit(e, sink, sink);
        err << sink.str();
        return code == 0 ? kExitOk : kExitValidation;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    const Bound& bo = bound.at(cfg.command);
    if (bo.a->count()) cfg.a = a;
    if (bo.b->count()) cfg.b = b;
    if (bo.d->count()) cfg.distortion = d;
    if (bo.n->count()) cfg.n = n;
    if (bo.n_grid->count()) cfg.n_grid = n_grid;
    if (bo.theta->count()) cfg.theta = theta;
    if (bo.theta_grid->count()) cfg.theta_grid = theta_grid;
    if (bo.x->count()) cfg.x = x;
    if (bo.x_grid->count()) cfg.x_grid = x_grid;
    if (bo.out->count()) cfg.out_path = out_path;
    if (!format.empty()) {
        cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::table;
    }
    return execute(cfg, out, err);
}

}  // namespace dtilt::cli
