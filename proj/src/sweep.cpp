#include "draper/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "draper/analytic.hpp"
#include "draper/bounds.hpp"
#include "json.hpp"

namespace draper {

namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader =
    "n,k,m,trials,worst_fidelity,mean_fidelity,worst_error_probability,"
    "paper_probability_bound_raw,paper_probability_bound_clamped,first_order_estimate,"
    "bound_satisfied,bound_vacuous,witness_a,witness_b";

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string join_hex(const std::vector<Register>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += '+';
        out += x.hex();
    }
    return out;
}

std::vector<Register> exhaustive_operands(int n, int m, std::uint64_t tuple) {
    // x0 occupies the highest bits so enumeration is lexicographic in (x0, b1, ...)
    std::vector<Register> ops;
    ops.reserve(static_cast<std::size_t>(m + 1));
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (int slot = 0; slot <= m; ++slot) {
        const int shift = n * (m - slot);
        ops.emplace_back(static_cast<std::size_t>(n), (tuple >> shift) & mask);
    }
    return ops;
}

bool parse_bool(std::string_view s, std::size_t line) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError("line " + std::to_string(line) + ": expected true/false, got '" + std::string(s) + "'");
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line) {
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": invalid integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// JSON has no inf or nan; those travel as the strings format_double uses.
json real(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

double real_from(const json& v) { return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>(); }

json record_to_json(const SweepRecord& r) {
    return json{{"n", r.n},
                {"k", r.k},
                {"m", r.m},
                {"trials", r.trials},
                {"worst_fidelity", real(r.worst_fidelity)},
                {"mean_fidelity", real(r.mean_fidelity)},
                {"worst_error_probability", real(r.worst_error_probability)},
                {"paper_probability_bound_raw", real(r.paper_probability_bound_raw)},
                {"paper_probability_bound_clamped", real(r.paper_probability_bound_clamped)},
                {"first_order_estimate", real(r.first_order_estimate)},
                {"bound_satisfied", r.bound_satisfied},
                {"bound_vacuous", r.bound_vacuous},
                {"witness_a", r.witness_a},
                {"witness_b", r.witness_b}};
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
    std::vector<SweepRecord> out;
    const auto lines = split(text, '\n');
    if (lines.empty() || lines[0] != kCsvHeader) throw ParseError("line 1: unexpected sweep CSV header");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 14) {
            throw ParseError("line " + std::to_string(line) + ": expected 14 fields, got " +
                             std::to_string(f.size()));
        }
        SweepRecord r;
        try {
            r.n = parse_int<int>(f[0], line);
            r.k = parse_int<int>(f[1], line);
            r.m = parse_int<int>(f[2], line);
            r.trials = parse_int<std::uint64_t>(f[3], line);
            r.worst_fidelity = parse_double(f[4]);
            r.mean_fidelity = parse_double(f[5]);
            r.worst_error_probability = parse_double(f[6]);
            r.paper_probability_bound_raw = parse_double(f[7]);
            r.paper_probability_bound_clamped = parse_double(f[8]);
            r.first_order_estimate = parse_double(f[9]);
            r.bound_satisfied = parse_bool(f[10], line);
            r.bound_vacuous = parse_bool(f[11], line);
        } catch (const ParseError& e) {
            const std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            throw ParseError("line " + std::to_string(line) + ": " + what);
        }
        r.witness_a = std::string(f[12]);
        r.witness_b = std::string(f[13]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SweepRecord> parse_json_records(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed sweep JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("sweep JSON must be an array of records");
    std::vector<SweepRecord> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& o = doc[i];
        try {
            SweepRecord r;
            r.n = o.at("n").get<int>();
            r.k = o.at("k").get<int>();
            r.m = o.at("m").get<int>();
            r.trials = o.at("trials").get<std::uint64_t>();
            r.worst_fidelity = real_from(o.at("worst_fidelity"));
            r.mean_fidelity = real_from(o.at("mean_fidelity"));
            r.worst_error_probability = real_from(o.at("worst_error_probability"));
            r.paper_probability_bound_raw = real_from(o.at("paper_probability_bound_raw"));
            r.paper_probability_bound_clamped = real_from(o.at("paper_probability_bound_clamped"));
            r.first_order_estimate = real_from(o.at("first_order_estimate"));
            r.bound_satisfied = o.at("bound_satisfied").get<bool>();
            r.bound_vacuous = o.at("bound_vacuous").get<bool>();
            r.witness_a = o.at("witness_a").get<std::string>();
            r.witness_b = o.at("witness_b").get<std::string>();
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ParseError("record " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, ptr};
}

double parse_double(std::string_view text) {
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    if (text == "nan") return std::nan("");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("invalid number '" + std::string(text) + "'");
    }
    return v;
}

SweepConfig parse_sweep_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed sweep config: ") + e.what());
    }
    SweepConfig c;
    try {
        c.n_values = doc.at("n_values").get<std::vector<int>>();
        c.k_values = doc.at("k_values").get<std::vector<int>>();
        const auto mode = doc.value("pair_mode", std::string("random"));
        if (mode == "exhaustive") {
            c.pair_mode = PairMode::exhaustive;
        } else if (mode == "random") {
            c.pair_mode = PairMode::random;
        } else {
            throw ParseError("pair_mode must be 'exhaustive' or 'random', got '" + mode + "'");
        }
        c.sample_count = doc.value("sample_count", c.sample_count);
        c.seed = doc.value("seed", c.seed);
        c.m_additions = doc.value("m_additions", c.m_additions);
        c.output_path = doc.value("output_path", std::string());
        const auto fmt = doc.value("output_format", std::string("csv"));
        if (fmt == "csv") {
            c.output_format = OutputFormat::csv;
        } else if (fmt == "json") {
            c.output_format = OutputFormat::json;
        } else {
            throw ParseError("output_format must be 'csv' or 'json', got '" + fmt + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("sweep config: ") + e.what());
    }
    return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sweep config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

std::vector<std::string> validate_sweep_config(const SweepConfig& c) {
    std::vector<std::string> errors;
    if (c.n_values.empty()) errors.emplace_back("n_values is empty");
    if (c.k_values.empty()) errors.emplace_back("k_values is empty");
    if (c.m_additions < 1) errors.emplace_back("m_additions must be at least 1");
    if (c.pair_mode == PairMode::random && c.sample_count == 0) {
        errors.emplace_back("sample_count must be positive in random mode");
    }
    for (int k : c.k_values) {
        if (k < 1) errors.push_back("k=" + std::to_string(k) + ": threshold must be at least 1");
    }
    for (int n : c.n_values) {
        if (n < 1) {
            errors.push_back("n=" + std::to_string(n) + ": width must be at least 1");
            continue;
        }
        if (c.pair_mode == PairMode::exhaustive && c.m_additions >= 1 &&
            static_cast<long long>(n) * (c.m_additions + 1) > kExhaustiveOperandBits) {
            for (int k : c.k_values) {
                errors.push_back("cell (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                 "): exhaustive mode needs n*(m+1) <= " +
                                 std::to_string(kExhaustiveOperandBits) + " operand bits");
            }
        }
    }
    return errors;
}

Register sample_operand(std::uint64_t seed, int n, int k, int m, std::uint64_t trial, int slot) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t v : {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(m), trial, static_cast<std::uint64_t>(slot)}) {
        h = splitmix64(h ^ v);
    }
    const auto width = static_cast<std::size_t>(n);
    Register out(width);
    for (std::size_t i = 0; i < width; i += 64) {
        const std::uint64_t limb = splitmix64(h + i / 64);
        for (std::size_t b = 0; b < 64 && i + b < width; ++b) {
            if ((limb >> b) & 1U) out.set_bit(i + b, true);
        }
    }
    return out;
}

SweepRecord evaluate_cell(int n, int k, const SweepConfig& config) {
    const int m = config.m_additions;
    SweepRecord rec;
    rec.n = n;
    rec.k = k;
    rec.m = m;

    std::uint64_t trials = config.sample_count;
    if (config.pair_mode == PairMode::exhaustive) {
        if (static_cast<long long>(n) * (m + 1) > kExhaustiveOperandBits) {
            throw SizeLimitError("exhaustive cell (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                 ") exceeds the operand-bit limit");
        }
        trials = std::uint64_t{1} << (n * (m + 1));
    }

    double sum = 0.0;
    std::vector<Register> worst_ops;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Register> ops;
        if (config.pair_mode == PairMode::exhaustive) {
            ops = exhaustive_operands(n, m, t);
        } else {
            ops.reserve(static_cast<std::size_t>(m + 1));
            for (int slot = 0; slot <= m; ++slot) ops.push_back(sample_operand(config.seed, n, k, m, t, slot));
        }
        const std::span<const Register> addends(ops.data() + 1, ops.size() - 1);
        const FidelityResult r =
            m == 1 ? exact_fidelity(ops[0], ops[1], n, k) : multi_add_fidelity(ops[0], addends, n, k);
        sum += r.fidelity;
        if (worst_ops.empty() || r.fidelity < rec.worst_fidelity) {
            rec.worst_fidelity = r.fidelity;
            rec.worst_error_probability = r.error_probability;
            worst_ops = ops;
        }
    }
    rec.trials = trials;
    rec.mean_fidelity = sum / static_cast<double>(trials);
    rec.witness_a = worst_ops.front().hex();
    rec.witness_b = join_hex(std::vector<Register>(worst_ops.begin() + 1, worst_ops.end()));

    const BoundReport b = bound_report(n, std::min(k, n), m);
    rec.paper_probability_bound_raw = b.probability_bound;
    rec.paper_probability_bound_clamped = b.probability_bound_clamped;
    rec.first_order_estimate = b.first_order_estimate;
    rec.bound_vacuous = b.vacuous();
    rec.bound_satisfied = rec.bound_vacuous || rec.worst_error_probability <= b.probability_bound;
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned threads) {
    std::vector<std::pair<int, int>> cells;
    for (int n : config.n_values) {
        for (int k : config.k_values) cells.emplace_back(n, k);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    std::vector<SweepRecord> records(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                records[i] = evaluate_cell(cells[i].first, cells[i].second, config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return records;
}

std::string format_csv(const std::vector<SweepRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.m) + ',' +
               std::to_string(r.trials) + ',' + format_double(r.worst_fidelity) + ',' +
               format_double(r.mean_fidelity) + ',' + format_double(r.worst_error_probability) + ',' +
               format_double(r.paper_probability_bound_raw) + ',' +
               format_double(r.paper_probability_bound_clamped) + ',' + format_double(r.first_order_estimate) +
               ',' + (r.bound_satisfied ? "true" : "false") + ',' + (r.bound_vacuous ? "true" : "false") + ',' +
               r.witness_a + ',' + r.witness_b + '\n';
    }
    return out;
}

std::string format_json(const std::vector<SweepRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    return arr.dump(2) + '\n';
}

std::vector<SweepRecord> parse_sweep_output(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') return parse_json_records(text);
    return parse_csv(text);
}

std::vector<SweepRecord> read_sweep_output(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open sweep output " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sweep_output(ss.str());
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> write_plotdata(const std::vector<SweepRecord>& records,
                                                  const std::filesystem::path& out_dir, const std::string& prefix) {
    std::map<int, std::vector<const SweepRecord*>> by_n;
    for (const auto& r : records) by_n[r.n].push_back(&r);

    std::vector<std::filesystem::path> written;
    if (by_n.empty()) return written;
    std::filesystem::create_directories(out_dir);
    for (auto& [n, rows] : by_n) {
        std::stable_sort(rows.begin(), rows.end(), [](const auto* x, const auto* y) { return x->k < y->k; });
        std::string text = "# n=" + std::to_string(n) + " m=" + std::to_string(rows.front()->m) +
                           " blocks: k log10_worst_error_probability | k log10_paper_probability_bound_raw\n";
        for (const auto* r : rows) {
            text += std::to_string(r->k) + '\t' + format_double(std::log10(r->worst_error_probability)) + '\n';
        }
        text += "\n\n";
        for (const auto* r : rows) {
            text += std::to_string(r->k) + '\t' + format_double(std::log10(r->paper_probability_bound_raw)) + '\n';
        }
        const auto path = out_dir / (prefix + "n" + std::to_string(n) + ".tsv");
        write_file_atomically(path, text);
        written.push_back(path);
    }
    return written;
}

}  // namespace draper
