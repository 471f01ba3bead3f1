#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "draper/analytic.hpp"
#include "draper/bounds.hpp"
#include "draper/statevector.hpp"
#include "draper/sweep.hpp"
#include "draper/verify.hpp"

namespace draper::cli {

namespace {

constexpr int kLabelWidth = 28;

std::string sci(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 5);
    return {buf, ptr};
}

void line(std::ostream& out, const std::string& label, const std::string& value) {
    out << std::left << std::setw(kLabelWidth) << label << value << '\n';
}

std::string carry_positions(const FidelityResult& r) {
    constexpr std::size_t kMaxShown = 32;
    std::string out;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < r.carry_profile.size(); ++i) {
        const std::uint64_t q = r.carry_profile[i];
        if (q == 0) continue;
        if (shown == kMaxShown) {
            out += " ...";
            break;
        }
        if (!out.empty()) out += ' ';
        out += std::to_string(i + 1);
        if (q > 1) out += ':' + std::to_string(q);
        ++shown;
    }
    return out.empty() ? "none" : out;
}

struct FidelityArgs {
    int n = 0;
    int k = 0;
    std::string a;
    std::string b;
    std::string multi;
    bool oracle = false;
    std::string mode = "classical";
};

int cmd_fidelity(const FidelityArgs& args, std::ostream& out, std::ostream& err) {
    if (args.n < 1 || args.k < 1) {
        err << "error: --n and --k must be at least 1\n";
        return kExitUsage;
    }
    const auto width = static_cast<std::size_t>(args.n);
    Register a;
    std::vector<Register> addends;
    try {
        a = Register::parse(args.a, width);
        addends.push_back(Register::parse(args.b, width));
        if (!args.multi.empty()) {
            std::stringstream ss(args.multi);
            std::string item;
            while (std::getline(ss, item, ',')) addends.push_back(Register::parse(item, width));
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const FidelityResult r = addends.size() == 1 ? exact_fidelity(a, addends[0], args.n, args.k)
                                                 : multi_add_fidelity(a, addends, args.n, args.k);
    Register sum = a;
    for (const auto& x : addends) sum += x;

    line(out, "n", std::to_string(args.n));
    line(out, "k", std::to_string(args.k));
    line(out, "a", a.hex());
    line(out, "b", addends[0].hex());
    if (addends.size() > 1) {
        std::string rest;
        for (std::size_t i = 1; i < addends.size(); ++i) rest += (i > 1 ? "," : "") + addends[i].hex();
        line(out, "multi", rest);
    }
    line(out, "sum", sum.hex());
    line(out, "fidelity", format_double(r.fidelity));
    line(out, "error_probability", sci(r.error_probability));
    line(out, "carries", std::to_string(r.total_carries()) + " over " + std::to_string(r.carry_profile.size()) +
                             " truncated positions");
    line(out, "carry_positions", carry_positions(r));

    if (args.oracle) {
        const PsiMode mode = args.mode == "quantum" ? PsiMode::quantum : PsiMode::classical;
        try {
            const double p = addends.size() == 1 ? draper_add(a, addends[0], args.n, args.k, mode)
                                                 : draper_multi_add(a, addends, args.n, args.k, mode);
            line(out, "oracle_probability", format_double(p));
            line(out, "oracle_abs_diff", sci(std::abs(p - r.fidelity)));
        } catch (const SizeLimitError& e) {
            line(out, "oracle_probability", "refused");
            err << "oracle refused: " << e.what() << '\n';
        }
    }
    return kExitOk;
}

int cmd_bound(int n, int k, int m, std::ostream& out, std::ostream& err) {
    BoundReport b;
    try {
        b = bound_report(n, k, m);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    line(out, "n", std::to_string(b.n));
    line(out, "k", std::to_string(b.k));
    line(out, "m", std::to_string(b.m_additions));
    line(out, "gamma_norm_bound", sci(b.gamma_norm_bound));
    line(out, "magnitude_bound", sci(b.magnitude_bound));
    line(out, "probability_bound_raw", sci(b.probability_bound));
    line(out, "probability_bound_clamped", sci(b.probability_bound_clamped));
    line(out, "first_order_estimate", sci(b.first_order_estimate));
    line(out, "first_order_relative_gap", sci(b.first_order_relative_gap));
    line(out, "vacuous", b.vacuous() ? "true" : "false");
    return kExitOk;
}

struct SweepArgs {
    std::string config;
    std::string n_values;
    std::string k_values;
    std::string pairs;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int m = 0;
    std::string output;
    std::string format;
    unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& args, const CLI::App& sub, std::ostream& out, std::ostream& err) {
    SweepConfig config;
    try {
        if (!args.config.empty()) config = load_sweep_config(args.config);
        if (sub.count("--n")) config.n_values = parse_int_list(args.n_values);
        if (sub.count("--k")) config.k_values = parse_int_list(args.k_values);
        if (sub.count("--pairs")) config.pair_mode = args.pairs == "exhaustive" ? PairMode::exhaustive : PairMode::random;
        if (sub.count("--samples")) config.sample_count = args.samples;
        if (sub.count("--seed")) config.seed = args.seed;
        if (sub.count("--m")) config.m_additions = args.m;
        if (sub.count("--output")) config.output_path = args.output;
        if (sub.count("--format")) config.output_format = args.format == "json" ? OutputFormat::json : OutputFormat::csv;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    auto problems = validate_sweep_config(config);
    if (config.output_path.empty()) problems.emplace_back("output_path is required");
    if (!problems.empty()) {
        for (const auto& p : problems) err << "invalid: " << p << '\n';
        return kExitUsage;
    }

    const auto records = run_sweep(config, args.threads);
    write_file_atomically(config.output_path,
                          config.output_format == OutputFormat::json ? format_json(records) : format_csv(records));

    const auto violations = std::count_if(records.begin(), records.end(), [](const SweepRecord& r) {
        return !r.bound_satisfied;
    });
    const auto vacuous = std::count_if(records.begin(), records.end(), [](const SweepRecord& r) {
        return r.bound_vacuous;
    });
    out << "wrote " << records.size() << " records to " << config.output_path.string() << " (" << vacuous
        << " vacuous, " << violations << " bound violations)\n";
    for (const auto& r : records) {
        if (!r.bound_satisfied) {
            err << "bound violated: n=" << r.n << " k=" << r.k << " m=" << r.m << " a=" << r.witness_a
                << " b=" << r.witness_b << " error " << sci(r.worst_error_probability) << " > "
                << sci(r.paper_probability_bound_raw) << '\n';
        }
    }
    return violations == 0 ? kExitOk : kExitFailure;
}

int cmd_verify(int max_n, std::uint64_t seed, bool inject_fault, std::ostream& out, std::ostream& err) {
    VerifyOptions opt;
    opt.max_n = max_n;
    opt.seed = seed;
    if (inject_fault) opt.oracle_drop_rule = DropRule::drop_at_threshold;
    VerifyReport report;
    try {
        report = run_verification(opt);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    for (const auto& s : report.suites) {
        out << (s.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(26) << s.name << " checked="
            << s.checked << " failures=" << s.failures << '\n';
        if (!s.passed()) out << "      first failure: " << s.first_failure << '\n';
    }
    out << (report.passed() ? "all suites passed" : "verification FAILED") << '\n';
    return report.passed() ? kExitOk : kExitFailure;
}

int cmd_plotdata(const std::string& input, const std::string& out_dir, const std::string& prefix,
                 std::ostream& out, std::ostream& err) {
    std::vector<SweepRecord> records;
    try {
        records = read_sweep_output(input);
    } catch (const ParseError& e) {
        err << "error: " << input << ": " << e.what() << '\n';
        return kExitUsage;
    }
    if (records.empty()) {
        err << "warning: " << input << " contains no records; nothing written\n";
        return kExitOk;
    }
    for (const auto& p : write_plotdata(records, out_dir, prefix)) out << p.string() << '\n';
    return kExitOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    const auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ParseError("invalid integer '" + std::string(s) + "' in list '" + text + "'");
        }
        return v;
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(std::string_view(item).substr(0, dots));
        const int hi = to_int(std::string_view(item).substr(dots + 2));
        if (hi < lo) throw ParseError("empty range '" + item + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw ParseError("empty integer list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated Draper adder: exact fidelities, error bounds, oracle checks and sweeps", "draper"};
    app.require_subcommand(1);

    FidelityArgs fid;
    auto* fidelity = app.add_subcommand("fidelity", "Exact success probability for one operand pair");
    fidelity->add_option("--n", fid.n, "Register width")->required();
    fidelity->add_option("--k", fid.k, "Rotation threshold")->required();
    fidelity->add_option("--a", fid.a, "First operand (decimal or 0x hex)")->required();
    fidelity->add_option("--b", fid.b, "Second operand (decimal or 0x hex)")->required();
    fidelity->add_option("--multi", fid.multi, "Further addends after b, comma separated");
    fidelity->add_flag("--oracle", fid.oracle, "Cross-check with the statevector simulator");
    fidelity->add_option("--mode", fid.mode, "Oracle Psi_b mode")->check(CLI::IsMember({"classical", "quantum"}));

    int bn = 0;
    int bk = 0;
    int bm = 1;
    auto* bound = app.add_subcommand("bound", "Closed-form error bounds");
    bound->add_option("--n", bn, "Register width")->required();
    bound->add_option("--k", bk, "Rotation threshold")->required();
    bound->add_option("--m", bm, "Number of chained additions");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Fidelity statistics over (n, k) cells");
    sweep->add_option("--config", sw.config, "JSON file with SweepConfig fields");
    sweep->add_option("--n", sw.n_values, "n values, e.g. 4..7,16");
    sweep->add_option("--k", sw.k_values, "k values, e.g. 1..8");
    sweep->add_option("--pairs", sw.pairs, "Operand enumeration")->check(CLI::IsMember({"exhaustive", "random"}));
    sweep->add_option("--samples", sw.samples, "Random trials per cell");
    sweep->add_option("--seed", sw.seed, "64-bit seed for random trials");
    sweep->add_option("--m", sw.m, "Additions per trial");
    sweep->add_option("--output", sw.output, "Output file");
    sweep->add_option("--format", sw.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", sw.threads, "Worker threads (0 = all cores)");

    int max_n = 7;
    std::uint64_t vseed = VerifyOptions{}.seed;
    bool inject = false;
    auto* verify = app.add_subcommand("verify", "Run the invariant battery");
    verify->add_option("--max-n", max_n, "Largest width in exhaustive suites")->check(CLI::Range(1, 8));
    verify->add_option("--seed", vseed, "Seed for sampled suites");
    verify->add_flag("--inject-fault", inject, "Move the oracle's gate-drop boundary (self-test)")->group("");

    std::string pin;
    std::string pdir = ".";
    std::string pprefix = "plot_";
    auto* plot = app.add_subcommand("plotdata", "Tab-separated curves from a sweep file");
    plot->add_option("--input", pin, "Sweep output (CSV or JSON)")->required();
    plot->add_option("--output-dir", pdir, "Directory for the .tsv files");
    plot->add_option("--prefix", pprefix, "File name prefix");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*fidelity) return cmd_fidelity(fid, out, err);
        if (*bound) return cmd_bound(bn, bk, bm, out, err);
        if (*sweep) return cmd_sweep(sw, *sweep, out, err);
        if (*verify) return cmd_verify(max_n, vseed, inject, out, err);
        if (*plot) return cmd_plotdata(pin, pdir, pprefix, out, err);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace draper::cli
