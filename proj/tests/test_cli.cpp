#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtilt/cli.hpp"

using namespace dtilt::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dtilt");
    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_n_grid("5") == std::vector<std::size_t>{5});
    CHECK(parse_n_grid("10:40:10") == std::vector<std::size_t>{10, 20, 30, 40});
    CHECK(parse_n_grid("1:3") == std::vector<std::size_t>{1, 2, 3});
    CHECK_THROWS_AS(parse_n_grid("0:5"), ValidationError);
    CHECK_THROWS_AS(parse_n_grid("5:1"), ValidationError);
    CHECK_THROWS_AS(parse_n_grid("a:b"), ValidationError);
    CHECK_THROWS_AS(parse_n_grid("1:2:3:4"), ValidationError);
    const auto xs = parse_real_grid("-0.5:0.5:0.25");
    REQUIRE(xs.size() == 5);
    CHECK(xs.front() == -0.5);
    CHECK(xs.back() == 0.5);
    CHECK_THROWS_AS(parse_real_grid("0:1:0"), ValidationError);
}

TEST_CASE("format_number round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 23.079979}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("exit codes") {
    CHECK(invoke({"stats", "--a", "0.1", "--b", "0.3", "--distortion", "0.1"}).code == kExitOk);
    CHECK(invoke({"stats", "--a", "0.1", "--b", "0.3", "--distortion", "0.3"}).code == kExitValidation);
    CHECK(invoke({"stats", "--a", "0.1", "--b", "0.3"}).code == kExitValidation);
    CHECK(invoke({"stats", "--a", "1.5", "--b", "0.3", "-D", "0.1"}).code == kExitValidation);
    CHECK(invoke({"stats", "--a", "0.1", "--b", "0.3", "-D", "0.1", "--perturb", "1e-3"}).code == kExitValidation);
    CHECK(invoke({"pmf", "--a", "0.1", "--b", "0.3", "-D", "0.1", "--n", "40000"}).code == kExitValidation);
    CHECK(invoke({"no-such-command"}).code == kExitValidation);
    CHECK(invoke({"rate", "--a", "0.1", "--b", "0.3", "--x", "5"}).code == kExitValidation);

    const auto dir = std::filesystem::temp_directory_path() / "dtilt-cli-missing-dir";
    std::filesystem::remove_all(dir);
    const Outcome io = invoke({"stats", "--a", "0.1", "--b", "0.3", "-D", "0.1", "--out", (dir / "x.csv").string()});
    CHECK(io.code == kExitIo);
}

TEST_CASE("CSV and JSON agree and round-trip") {
    const std::vector<std::string> base{"variance-table", "--a", "0.1", "--b", "0.3", "-D", "0.1", "--n-grid", "10:50:10"};
    auto csv_args = base;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    auto json_args = base;
    json_args.push_back("--json");
    const Outcome csv = invoke(csv_args);
    const Outcome json = invoke(json_args);
    REQUIRE(csv.code == kExitOk);
    REQUIRE(json.code == kExitOk);

    const Table parsed = parse_csv(csv.out);
    CHECK(render_csv(parsed) == csv.out);

    const auto doc = nlohmann::json::parse(json.out);
    const auto& rows = doc["tables"][0]["rows"];
    REQUIRE(rows.size() == parsed.rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < parsed.columns.size(); ++c) {
            CHECK(rows[r][parsed.columns[c]].get<double>() == std::get<double>(parsed.rows[r][c]));
        }
    }
    CHECK(doc["tables"][0]["columns"][0] == "n");
}

TEST_CASE("figure writes per-letter variance as CSV") {
    const Outcome f = invoke({"figure", "--a", "0.1", "--b", "0.3", "-D", "0.1", "--n-grid", "1:100:33"});
    REQUIRE(f.code == kExitOk);
    const Table t = parse_csv(f.out);
    CHECK(t.columns == std::vector<std::string>{"n", "var_per_letter", "v_sl", "v_iid"});
    REQUIRE(t.rows.size() == 4);
    CHECK(std::get<double>(t.rows[0][1]) == doctest::Approx(0.47102).epsilon(1e-4));
}

TEST_CASE("--out writes the same bytes as stdout") {
    const auto path = std::filesystem::temp_directory_path() / "dtilt-cli-out.csv";
    const std::vector<std::string> args{"cgf", "--a", "0.1", "--b", "0.3", "--n", "20", "--theta-grid", "-1:1:0.5",
                                        "--format", "csv"};
    const Outcome direct = invoke(args);
    auto to_file = args;
    to_file.insert(to_file.end(), {"--out", path.string()});
    REQUIRE(invoke(to_file).code == kExitOk);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.out);
    std::filesystem::remove(path);
}

TEST_CASE("paper-tables and verify") {
    const Outcome tables = invoke({"paper-tables"});
    CHECK(tables.code == kExitOk);
    CHECK(tables.out.find("FAIL") == std::string::npos);
    CHECK(tables.out.find("n=10: 1.533 PASS") != std::string::npos);

    const Outcome ok = invoke({"verify", "--json"});
    CHECK(ok.code == kExitOk);
    CHECK(nlohmann::json::parse(ok.out)["pass"] == true);

    const Outcome bad = invoke({"verify", "--perturb", "1e-6", "--json"});
    CHECK(bad.code == kExitVerifyFailed);
    const auto doc = nlohmann::json::parse(bad.out);
    CHECK(doc["pass"] == false);
}
