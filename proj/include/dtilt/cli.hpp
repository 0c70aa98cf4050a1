#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dtilt::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitVerifyFailed = 2,
    kExitIo = 3,
};

enum class OutputFormat { table, csv, json };

/// Parsed command line shared by every subcommand. Only the fields a
/// command needs are validated, before any computation starts.
struct RunConfig {
    std::string command;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> distortion;
    std::optional<std::size_t> n;
    std::optional<std::string> n_grid;
    std::optional<double> theta;
    std::optional<std::string> theta_grid;
    std::optional<double> x;
    std::optional<std::string> x_grid;
    std::size_t replications = 10000;
    std::uint64_t seed = 1;
    std::optional<OutputFormat> format;  // command default when unset
    std::optional<std::string> out_path;
    double perturb = 0.0;
    bool finite_n = false;
};

/// Thrown for missing or malformed parameters; maps to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::string>;

/// Rectangular result set rendered as an aligned table, CSV or JSON.
struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string render(const std::vector<Table>& tables, OutputFormat format);
std::string render_csv(const Table& table);
std::string render_json(const std::vector<Table>& tables);

/// Inverse of render_csv: numeric cells come back as doubles.
Table parse_csv(const std::string& text);

/// Shortest decimal text that reads back to the same double (up to 17 digits).
std::string format_number(double value);

/// "start:stop[:step]", inclusive of stop.
std::vector<std::size_t> parse_n_grid(const std::string& spec);
std::vector<double> parse_real_grid(const std::string& spec);

/// Runs one command; output goes to `out` unless the config names a file.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: parse argv, then execute.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dtilt::cli
