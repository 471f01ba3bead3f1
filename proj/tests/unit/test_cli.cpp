#include <filesystem>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "draper/sweep.hpp"

namespace fs = std::filesystem;
using draper::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// value column of a "label   value" line
std::string field(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::string row;
    while (std::getline(in, row)) {
        std::istringstream cols(row);
        std::string name;
        cols >> name;
        if (name == label) {
            std::string value;
            std::getline(cols >> std::ws, value);
            return value;
        }
    }
    return {};
}

}  // namespace

TEST_CASE("integer lists") {
    CHECK(draper::cli::parse_int_list("4..7,10") == std::vector<int>{4, 5, 6, 7, 10});
    CHECK(draper::cli::parse_int_list("3") == std::vector<int>{3});
    CHECK_THROWS(draper::cli::parse_int_list("7..4"));
    CHECK_THROWS(draper::cli::parse_int_list("x"));
}

TEST_CASE("fidelity with oracle") {
    const auto r = invoke({"fidelity", "--n", "3", "--k", "2", "--a", "1", "--b", "1", "--oracle"});
    CHECK(r.code == 0);
    CHECK(draper::parse_double(field(r.out, "fidelity")) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(draper::parse_double(field(r.out, "oracle_probability")) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::stod(field(r.out, "oracle_abs_diff")) < 1e-10);

    const auto exact = invoke({"fidelity", "--n", "8", "--k", "8", "--a", "0xAB", "--b", "0x11"});
    CHECK(exact.code == 0);
    CHECK(field(exact.out, "fidelity") == "1");
}

TEST_CASE("fidelity at n = 1000") {
    std::mt19937_64 rng(71);
    std::string a = "0x";
    std::string b = "0x";
    const char* hex = "0123456789abcdef";
    for (int i = 0; i < 250; ++i) {
        a += hex[rng() % 16];
        b += hex[rng() % 16];
    }
    const auto r = invoke({"fidelity", "--n", "1000", "--k", "30", "--a", a, "--b", b});
    CHECK(r.code == 0);
    CHECK(std::stod(field(r.out, "error_probability")) <= 1.6e-11);
}

TEST_CASE("fidelity errors") {
    const auto overflow = invoke({"fidelity", "--n", "3", "--k", "2", "--a", "9", "--b", "1"});
    CHECK(overflow.code != 0);
    CHECK_FALSE(overflow.err.empty());

    // refusal still prints the analytic result
    const auto big = invoke({"fidelity", "--n", "20", "--k", "3", "--a", "1", "--b", "1", "--oracle"});
    CHECK(big.code == 0);
    CHECK(field(big.out, "oracle_probability") == "refused");
    CHECK_FALSE(field(big.out, "fidelity").empty());

    CHECK(invoke({"fidelity", "--n", "3"}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
}

TEST_CASE("bound") {
    const auto r = invoke({"bound", "--n", "1000", "--k", "30"});
    CHECK(r.code == 0);
    CHECK(std::stod(field(r.out, "magnitude_bound")) == doctest::Approx(4.01363e-6).epsilon(1e-5));
    const auto zero = invoke({"bound", "--n", "30", "--k", "30"});
    CHECK(std::stod(field(zero.out, "magnitude_bound")) == 0.0);
    CHECK(std::stod(field(zero.out, "probability_bound_raw")) == 0.0);
    const auto multi = invoke({"bound", "--n", "1000", "--k", "30", "--m", "100"});
    CHECK(std::stod(field(multi.out, "magnitude_bound")) == doctest::Approx(4.01443e-4).epsilon(1e-5));
    CHECK(invoke({"bound", "--n", "3", "--k", "4"}).code == 2);
}

TEST_CASE("sweep and plotdata") {
    const fs::path dir = fs::temp_directory_path() / ("draper_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto out1 = (dir / "a.csv").string();
    const auto out2 = (dir / "b.csv").string();
    const std::vector<std::string> base{"sweep", "--n", "4..5", "--k", "1..3", "--pairs", "exhaustive"};
    auto args1 = base;
    args1.insert(args1.end(), {"--output", out1});
    auto args2 = base;
    args2.insert(args2.end(), {"--output", out2, "--threads", "2"});
    CHECK(invoke(args1).code == 0);
    CHECK(invoke(args2).code == 0);
    CHECK(draper::read_sweep_output(out1) == draper::read_sweep_output(out2));

    const auto bad = invoke({"sweep", "--n", "11", "--k", "1", "--pairs", "exhaustive", "--output",
                             (dir / "c.csv").string()});
    CHECK(bad.code != 0);
    CHECK(bad.err.find("n=11") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "c.csv"));

    const auto plot = invoke({"plotdata", "--input", out1, "--output-dir", (dir / "plots").string()});
    CHECK(plot.code == 0);
    CHECK(fs::exists(dir / "plots" / "plot_n4.tsv"));
    CHECK(fs::exists(dir / "plots" / "plot_n5.tsv"));
    fs::remove_all(dir);
}

TEST_CASE("verify") {
    const auto r = invoke({"verify", "--max-n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all suites passed") != std::string::npos);
    const auto fault = invoke({"verify", "--max-n", "4", "--inject-fault"});
    CHECK(fault.code == 1);
    CHECK(fault.out.find("FAIL") != std::string::npos);
}
