#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "draper/register.hpp"

namespace draper {

enum class PairMode { exhaustive, random };
enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<int> n_values;
    std::vector<int> k_values;
    PairMode pair_mode = PairMode::random;
    std::uint64_t sample_count = 1000;
    std::uint64_t seed = 0;
    int m_additions = 1;
    std::filesystem::path output_path;
    OutputFormat output_format = OutputFormat::csv;
};

/// Operand bits a single exhaustive cell may enumerate: n (m + 1) <= this.
/// With m = 1 this is the n <= 10 limit.
inline constexpr int kExhaustiveOperandBits = 20;

/// Reads a JSON object whose keys mirror SweepConfig's field names.
SweepConfig load_sweep_config(const std::filesystem::path& path);
SweepConfig parse_sweep_config(std::string_view json_text);

/// One message per rejected cell or field; empty when the config is valid.
std::vector<std::string> validate_sweep_config(const SweepConfig& config);

struct SweepRecord {
    int n = 0;
    int k = 0;
    int m = 1;
    std::uint64_t trials = 0;
    double worst_fidelity = 1.0;
    double mean_fidelity = 1.0;
    double worst_error_probability = 0.0;
    double paper_probability_bound_raw = 0.0;
    double paper_probability_bound_clamped = 0.0;
    double first_order_estimate = 0.0;
    /// False only for a violation of a non-vacuous bound.
    bool bound_satisfied = true;
    /// Raw bound above 1, so it constrains nothing.
    bool bound_vacuous = false;
    std::string witness_a;
    /// Addends of the worst trial in hex, joined by '+'.
    std::string witness_b;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Trial `trial` of cell (n, k, m): operand `slot` (0 = x0) as an n-bit
/// register. Depends only on its arguments, not on evaluation order.
Register sample_operand(std::uint64_t seed, int n, int k, int m, std::uint64_t trial, int slot);

/// Evaluates one cell. For k >= n nothing is truncated and the bound is
/// evaluated at k = n, where it is zero.
SweepRecord evaluate_cell(int n, int k, const SweepConfig& config);

/// All (n, k) cells, evaluated by `threads` workers (0 = hardware
/// concurrency) and returned sorted by (n, k).
std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads = 0);

std::string format_csv(const std::vector<SweepRecord>& records);
std::string format_json(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> parse_sweep_output(std::string_view text);
std::vector<SweepRecord> read_sweep_output(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

/// Per n value, a tab-separated file "<prefix>n<N>.tsv" with one comment
/// line, then two blank-line-separated blocks of (k, log10 value): the
/// measured worst error probability, then the raw probability bound.
std::vector<std::filesystem::path> write_plotdata(const std::vector<SweepRecord>& records,
                                                  const std::filesystem::path& out_dir,
                                                  const std::string& prefix = "plot_");

/// Shortest text that parses back to exactly `v` ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace draper
