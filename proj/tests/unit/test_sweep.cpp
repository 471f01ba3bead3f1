#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "draper/sweep.hpp"

using namespace draper;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("draper_sweep_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SweepConfig small_random(std::uint64_t seed) {
    SweepConfig c;
    c.n_values = {5, 64};
    c.k_values = {2, 6, 70};
    c.sample_count = 50;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("sampling is a pure function of its arguments") {
    CHECK(sample_operand(1, 64, 4, 1, 7, 0) == sample_operand(1, 64, 4, 1, 7, 0));
    CHECK_FALSE(sample_operand(1, 64, 4, 1, 7, 0) == sample_operand(1, 64, 4, 1, 7, 1));
    CHECK_FALSE(sample_operand(1, 64, 4, 1, 7, 0) == sample_operand(2, 64, 4, 1, 7, 0));
    CHECK(sample_operand(9, 1000, 30, 1, 0, 0).width() == 1000);
}

TEST_CASE("sweeps are deterministic regardless of threads") {
    const auto one = run_sweep(small_random(99), 1);
    const auto many = run_sweep(small_random(99), 3);
    CHECK(format_csv(one) == format_csv(many));
    CHECK(format_json(one) == format_json(many));
    CHECK(format_csv(one) != format_csv(run_sweep(small_random(100), 1)));
    REQUIRE(one.size() == 6);
    CHECK(one[0].n == 5);
    CHECK(one[0].k == 2);
    CHECK(one[5].k == 70);
}

TEST_CASE("k >= n cells are exact and bound zero") {
    const auto r = evaluate_cell(5, 9, small_random(1));
    CHECK(r.worst_fidelity == 1.0);
    CHECK(r.worst_error_probability == 0.0);
    CHECK(r.paper_probability_bound_raw == 0.0);
    CHECK(r.bound_satisfied);
    CHECK_FALSE(r.bound_vacuous);
}

TEST_CASE("exhaustive small sweep respects the bound") {
    SweepConfig c;
    c.n_values = {4, 5, 6, 7};
    c.k_values = {1, 2, 3, 4, 5, 6, 7, 8};
    c.pair_mode = PairMode::exhaustive;
    for (const auto& r : run_sweep(c, 1)) {
        CHECK((r.bound_satisfied || r.bound_vacuous));
        CHECK(r.trials == (std::uint64_t{1} << (2 * r.n)));
        CHECK(r.worst_fidelity <= r.mean_fidelity);
    }
}

TEST_CASE("csv and json round trip exactly") {
    auto records = run_sweep(small_random(5), 1);
    records[0].worst_error_probability = std::numeric_limits<double>::denorm_min();
    records[1].paper_probability_bound_raw = std::numeric_limits<double>::infinity();
    CHECK(parse_sweep_output(format_csv(records)) == records);
    CHECK(parse_sweep_output(format_json(records)) == records);
    CHECK(parse_sweep_output(format_csv({})).empty());
}

TEST_CASE("malformed output names the line") {
    const std::string csv = format_csv(run_sweep(small_random(5), 1));
    std::string broken = csv;
    broken.replace(broken.find("\n") + 1, 1, "x");
    try {
        parse_sweep_output(broken);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sweep_output("n,k\n"), ParseError);
    CHECK_THROWS_AS(parse_sweep_output("[{\"n\": 1}]"), ParseError);
}

TEST_CASE("config parsing and validation") {
    const auto c = parse_sweep_config(
        R"({"n_values": [4, 5], "k_values": [1, 2], "pair_mode": "exhaustive", "seed": 3,
            "m_additions": 2, "output_path": "x.json", "output_format": "json"})");
    CHECK(c.n_values == std::vector<int>{4, 5});
    CHECK(c.pair_mode == PairMode::exhaustive);
    CHECK(c.m_additions == 2);
    CHECK(c.output_format == OutputFormat::json);
    CHECK(validate_sweep_config(c).empty());

    SweepConfig bad = c;
    bad.n_values = {11, 0};
    bad.k_values = {0, 3};
    const auto errors = validate_sweep_config(bad);
    CHECK(errors.size() >= 3);

    CHECK_THROWS_AS(parse_sweep_config("{"), ParseError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"n_values": [1], "k_values": [1], "pair_mode": "all"})"), ParseError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"k_values": [1]})"), ParseError);
}

TEST_CASE("doubles print shortest and parse back") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 400) - 300);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::isinf(parse_double("inf")));
    CHECK_THROWS_AS(parse_double("1.0x"), ParseError);
}

TEST_CASE("atomic write leaves no temporary") {
    TempDir dir;
    const auto p = dir.path / "out.csv";
    write_file_atomically(p, "hello\n");
    write_file_atomically(p, "again\n");
    CHECK(slurp(p) == "again\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path)) ++entries;
    CHECK(entries == 1);
}

TEST_CASE("plotdata") {
    TempDir dir;
    SweepConfig c;
    c.n_values = {16, 64, 256};
    c.k_values = {4, 8, 300};
    c.sample_count = 20;
    const auto records = run_sweep(c, 1);
    const auto files = write_plotdata(records, dir.path, "t_");
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == "t_n16.tsv");
    CHECK(write_plotdata({}, dir.path).empty());

    // every value is log10 of the record field, bit for bit
    const std::string text = slurp(files[1]);
    CHECK(text.rfind("#", 0) == 0);
    std::istringstream in(text);
    std::string row;
    std::getline(in, row);
    int block = 0;
    std::size_t idx = 0;
    std::vector<SweepRecord> n64;
    for (const auto& r : records) {
        if (r.n == 64) n64.push_back(r);
    }
    while (std::getline(in, row)) {
        if (row.empty()) {
            block = 1;
            idx = 0;
            continue;
        }
        const auto tab = row.find('\t');
        REQUIRE(tab != std::string::npos);
        REQUIRE(idx < n64.size());
        const auto& r = n64[idx++];
        CHECK(std::stoi(row.substr(0, tab)) == r.k);
        const double want = std::log10(block == 0 ? r.worst_error_probability : r.paper_probability_bound_raw);
        const double got = parse_double(row.substr(tab + 1));
        if (std::isnan(want)) {
            CHECK(std::isnan(got));
        } else {
            CHECK(got == want);
        }
    }
    CHECK(block >= 1);
}
