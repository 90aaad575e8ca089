#include "shiftbin_cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace shiftbin;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

int run_binary(const std::string& args)
{
    const std::string cmd = std::string(SHIFTBIN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("shiftbin_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST_CASE("verify suites")
{
    auto r = run({"verify", "identity", "--r", "2", "--l", "1,1,1", "--p", "1", "--q", "5"});
    CHECK(r.code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report["pass"] == true);
    CHECK(report["checks"][0]["abs_err"].get<double>() < 1e-10);


    r = run({"verify", "odd-equality", "--r", "2", "--l", "1,1", "--a-max", "9"});
    CHECK(r.code == 0);
    const auto odd = nlohmann::json::parse(r.out);
    CHECK(odd["checks"].size() == 10);
    CHECK(odd["checks"][0]["abs_err"] == "exact");

    CHECK(run({"verify", "cg", "--n", "4", "--g", "3"}).code == 0);
    CHECK(run({"verify", "sum-rule", "--l", "2,1,1"}).code == 0);
    CHECK(run({"verify", "reconstruct", "--l", "1,2", "--p", "2", "--q", "7"}).code == 0);
    CHECK(run({"verify", "all", "--l", "1,1", "--p", "1", "--q", "3"}).code == 0);
    CHECK(run({"verify", "bogus"}).code == 2);
}

TEST_CASE("coeffs tables")
{
    auto r = run({"coeffs", "even", "--r", "2", "--l", "1,1"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"A", "num", "den", "pi_exp", "float"});
    CHECK(rows[1][0] == "-2");
    CHECK(rows[1][1] == "1");
    CHECK(rows[2][1] == "4");
    CHECK(rows[3][1] == "1");

    r = run({"coeffs", "odd", "--l", "1,1", "--a-max", "5"});
    REQUIRE(r.code == 0);
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][3] == "2");
        // num/den re-parse to the in-memory value
        const auto a = std::stoll(rows[i][0]);
        CHECK(Rational::parse(rows[i][1] + "/" + rows[i][2]) == odd_area_coefficient(SumSpec(2, {1, 1}), a).coeff());
    }

    CHECK(run({"coeffs", "odd", "--l", "1,1", "--A", "2"}).code == 2);
    CHECK(run({"coeffs", "nonsense"}).code == 2);
    r = run({"coeffs", "even", "--l", "0,0", "--a-max", "0", "--A", "4"});
    CHECK(r.code == 0);
    CHECK(csv_rows(r.out).size() == 2);

    r = run({"coeffs", "trade-unit", "--l", "1,1", "--a-max", "4", "--m", "20", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["symmetry"] == "antisymmetric");
    CHECK(doc["rows"].size() == 5);
}

TEST_CASE("seq tables")
{
    auto r = run({"seq", "pi", "--l", "2", "--m", "1:5:1"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"m", "num", "den", "float", "target", "abs_error"});
    CHECK(rows[1][0] == "1");
    CHECK(rows[1][1] == "44");
    CHECK(rows[1][2] == "15");
    CHECK(r.err.find("target: pi") != std::string::npos);

    r = run({"seq", "agg", "--n", "2", "--g", "2", "--r", "2", "--m", "0:50:10"});
    REQUIRE(r.code == 0);
    rows = csv_rows(r.out);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][5]) < std::stod(rows[i - 1][5]));
    }

    CHECK(run({"seq", "ratio-pi", "--r", "2", "--l", "1,1", "--A", "0"}).code == 2);
    CHECK(run({"seq", "ratio-pi", "--r", "2", "--l", "1,1", "--A", "2", "--m", "10"}).code == 0);
    CHECK(run({"seq", "pis-odd", "--l", "1", "--s", "1/2"}).code == 2);
    CHECK(run({"seq", "pis", "--l", "1", "--s", "1/3", "--m", "10,100"}).code == 0);
    CHECK(run({"seq", "chu", "--s", "1/3", "--m", "10"}).code == 0);
    CHECK(run({"seq", "pi2", "--l", "2", "--m", "5:1"}).code == 2);

    r = run({"seq", "pi2", "--l", "2", "--m", "10:13:1", "--accelerate", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["accelerated"] == true);
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["target_symbol"] == "pi^2 [averaged]");
}

TEST_CASE("compositions listing")
{
    auto r = run({"compositions", "--n", "2", "--g", "2"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][2] + "/" + rows[1][3] == "1/2");
    CHECK(rows[1][5] == "2;0");
    CHECK(rows[2][2] + "/" + rows[2][3] == "1/1");
    CHECK(run({"compositions", "--n", "5", "--g", "3", "--check"}).code == 0);
    CHECK(run({"compositions", "--n", "0", "--g", "2"}).code == 2);
    CHECK(run({"compositions", "--n", "2", "--g", "1"}).code == 2);
}

TEST_CASE("short aliases for suites, kinds and windows")
{
    CHECK(run({"verify", "sonice", "--l", "1,1,1", "--p", "1", "--q", "5"}).out ==
          run({"verify", "identity", "--l", "1,1,1", "--p", "1", "--q", "5"}).out);
    CHECK(run({"seq", "ratio51", "--A", "0", "--m", "5"}).out == run({"seq", "ratio-pi2", "--A", "0", "--m", "5"}).out);
    CHECK(run({"seq", "ratio52", "--A", "2", "--m", "5"}).out == run({"seq", "ratio-pi", "--A", "2", "--m", "5"}).out);
    CHECK(run({"seq", "pi", "--l", "2", "--window", "paper"}).out ==
          run({"seq", "pi", "--l", "2", "--window", "one-sided"}).out);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"seq"}).code == 2);
    CHECK(run({"coeffs", "even", "--r", "3"}).code == 2);
    CHECK(run({"coeffs", "even", "--q", "0"}).code == 2);
    CHECK(run({"coeffs", "even", "--p", "2", "--q", "4"}).code == 2);
    CHECK(run({"coeffs", "even", "--format", "xml"}).code == 2);
    CHECK(run({"coeffs", "even", "--window", "wide"}).code == 2);
    CHECK(run({"seq", "pi", "--l", "x"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file mirrors flags; flags override")
{
    const auto path = temp_path("cfg.ini");
    {
        std::ofstream f(path);
        f << "l=4\nm=10\n";
    }
    auto from_file = run({"seq", "pi", "--config", path.string()});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == run({"seq", "pi", "--l", "4", "--m", "10"}).out);
    auto overridden = run({"seq", "pi", "--config", path.string(), "--m", "20"});
    CHECK(overridden.out == run({"seq", "pi", "--l", "4", "--m", "20"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("output is deterministic and --out writes the same bytes")
{
    const std::vector<std::string> args{"seq", "agg", "--n", "3", "--g", "3", "--m", "0:20:5", "--workers", "3"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.out == b.out);
    auto serial = args;
    serial.back() = "1";
    CHECK(run(serial).out == a.out);

    const auto path = temp_path("out.csv");
    auto with_out = args;
    with_out.push_back("--out");
    with_out.push_back(path.string());
    REQUIRE(run(with_out).code == 0);
    std::ifstream f(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(written == a.out);
    std::filesystem::remove(path);
}

TEST_CASE("binary exit codes")
{
    CHECK(run_binary("verify identity --r 2 --l 1,1,1 --p 1 --q 5") == 0);
    CHECK(run_binary("seq ratio-pi --r 2 --l 1,1 --A 0") == 2);
    CHECK(run_binary("compositions --n 0 --g 2") == 2);
    CHECK(run_binary("nosuchcommand") == 2);
}
