#include "draper/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "draper/analytic.hpp"
#include "draper/bounds.hpp"
#include "draper/phase.hpp"

namespace draper {

namespace {

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    template <class Describe>
    void check(bool ok, Describe&& describe) {
        ++result_.checked;
        if (ok) return;
        if (result_.failures++ == 0) result_.first_failure = describe();
    }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string cell(int n, int k, const Register& a, const Register& b) {
    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + a.hex() + " b=" + b.hex();
}

bool rel_close(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

Register reg(int n, std::uint64_t v) { return {static_cast<std::size_t>(n), v}; }

Register random_register(std::mt19937_64& rng, int n) {
    Register r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i += 64) {
        const std::uint64_t limb = rng();
        for (int b = 0; b < 64 && i + b < n; ++b) {
            if ((limb >> b) & 1U) r.set_bit(static_cast<std::size_t>(i + b), true);
        }
    }
    return r;
}

DyadicPhase random_phase(std::mt19937_64& rng) {
    const auto e = static_cast<std::size_t>(rng() % 130);
    return {random_register(rng, static_cast<int>(e) + 1), e};
}

SuiteResult truncation_identity(const VerifyOptions& opt) {
    Suite s("truncation_identity");
    const int w = std::clamp(opt.max_n + 1, 1, 8);
    const std::uint64_t size = std::uint64_t{1} << w;
    for (std::uint64_t av = 0; av < size; ++av) {
        for (std::uint64_t bv = 0; bv < size; ++bv) {
            const Register a = reg(w, av);
            const Register b = reg(w, bv);
            const Register sum = a + b;
            for (int m = 0; m <= w; ++m) {
                const int carry = carry_indicator(a, b, m);
                const std::uint64_t mod = std::uint64_t{1} << m;
                const std::uint64_t lhs = av % mod + bv % mod - sum.low_u64() % mod;
                s.check(lhs == static_cast<std::uint64_t>(carry) * mod, [&] {
                    return "integer defect mismatch a=" + a.hex() + " b=" + b.hex() + " m=" + std::to_string(m);
                });
                for (int k : {1, 2, w}) {
                    const DyadicPhase defect = truncation(k, m, a) + truncation(k, m, b) - truncation(k, m, sum);
                    const DyadicPhase expect = carry ? DyadicPhase::unit(static_cast<std::size_t>(k)) : DyadicPhase{};
                    s.check(defect == expect, [&] {
                        return "Tr defect " + defect.to_string() + " != carry*2^-k for a=" + a.hex() + " b=" +
                               b.hex() + " m=" + std::to_string(m) + " k=" + std::to_string(k);
                    });
                }
            }
        }
    }
    return s.take();
}

SuiteResult multi_sum_identity(const VerifyOptions& opt) {
    Suite s("multi_sum_identity");
    std::mt19937_64 rng(opt.seed ^ 0x51u);
    for (int trial = 0; trial < 20000; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 8);
        const std::size_t count = 1 + rng() % 6;
        std::vector<Register> xs;
        Register sum(static_cast<std::size_t>(w));
        for (std::size_t i = 0; i < count; ++i) {
            xs.push_back(random_register(rng, w));
            sum += xs.back();
        }
        for (int m = 0; m <= w; ++m) {
            const std::uint64_t q = carry_count_multi(xs, m);
            const std::uint64_t mod = std::uint64_t{1} << m;
            std::uint64_t lows = 0;
            for (const auto& x : xs) lows += x.low_u64() % mod;
            const auto describe = [&] {
                std::string d = "m=" + std::to_string(m) + " q=" + std::to_string(q) + " xs=";
                for (const auto& x : xs) d += x.hex() + ' ';
                return d;
            };
            s.check(lows - sum.low_u64() % mod == q * mod, describe);
            s.check(q + 1 <= count, describe);
            const int k = 3;
            DyadicPhase defect = -truncation(k, m, sum);
            for (const auto& x : xs) defect += truncation(k, m, x);
            s.check(defect == DyadicPhase(q, k), describe);
        }
    }
    return s.take();
}

SuiteResult phase_laws(const VerifyOptions& opt) {
    Suite s("phase_laws");
    std::mt19937_64 rng(opt.seed ^ 0x9au);
    for (int trial = 0; trial < 5000; ++trial) {
        const DyadicPhase p = random_phase(rng);
        const DyadicPhase q = random_phase(rng);
        const DyadicPhase r = random_phase(rng);
        const auto d = [&] { return p.to_string() + ", " + q.to_string() + ", " + r.to_string(); };
        s.check((p + q) + r == p + (q + r), d);
        s.check(p + q == q + p, d);
        s.check(p + DyadicPhase{} == p, d);
        s.check((p + -p).is_zero(), d);
    }
    // a / 2^k mod 1 == 0.a_k ... a_1
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 200);
        const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
        const Register a = random_register(rng, n);
        DyadicPhase digits;
        for (int i = 0; i < k; ++i) {
            if (a.bit(static_cast<std::size_t>(i))) digits += DyadicPhase::unit(static_cast<std::size_t>(k - i));
        }
        s.check(DyadicPhase(a, static_cast<std::size_t>(k)) == digits,
                [&] { return "digit identity a=" + a.hex() + " k=" + std::to_string(k); });
    }
    return s.take();
}

SuiteResult gate_counts(const VerifyOptions& opt) {
    Suite s("gate_counts");
    const CircuitOptions copt{opt.oracle_drop_rule};
    for (int n = 1; n <= 12; ++n) {
        for (int k = 1; k <= 12; ++k) {
            const GateCounts c = count_gates(qft_circuit(n, k, copt));
            std::size_t cr = 0;
            for (int j = 2; j <= n; ++j) cr += static_cast<std::size_t>(std::min(j - 1, k - 1));
            const GateCounts expect{static_cast<std::size_t>(n), cr, 0, static_cast<std::size_t>(n / 2)};
            s.check(c == expect, [&] {
                return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " got H=" + std::to_string(c.hadamard) +
                       " CR=" + std::to_string(c.controlled_rotation) + " SWAP=" + std::to_string(c.swap) +
                       ", expected CR=" + std::to_string(cr);
            });
            if (k >= n) {
                s.check(c.controlled_rotation == static_cast<std::size_t>(n * (n - 1) / 2),
                        [&] { return "untruncated CR count n=" + std::to_string(n); });
            }
        }
    }
    return s.take();
}

SuiteResult qft_structure(const VerifyOptions& opt) {
    Suite s("qft_structure");
    const CircuitOptions copt{opt.oracle_drop_rule};
    const int max_n = std::min(opt.max_n, 8);
    for (int n = 1; n <= max_n; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (int k = 1; k <= n + 1; ++k) {
            const Circuit qft = qft_circuit(n, k, copt);
            const Circuit inv = inverse_circuit(qft);
            for (std::uint64_t av = 0; av < dim; ++av) {
                StateVector sv(n, av);
                sv.apply(qft);
                const StateVector product = product_state_vector(aqft_phases(reg(n, av), n, k));
                double dev = 0.0;
                double dft_dev = 0.0;
                for (std::uint64_t x = 0; x < dim; ++x) {
                    dev = std::max(dev, std::abs(sv.amplitude(x) - product.amplitude(x)));
                    if (k >= n) {
                        const double angle = 2.0 * std::numbers::pi * static_cast<double>((av * x) % dim) /
                                             static_cast<double>(dim);
                        const auto expect = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), angle);
                        dft_dev = std::max(dft_dev, std::abs(sv.amplitude(x) - expect));
                    }
                }
                const auto where = [&] {
                    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + std::to_string(av);
                };
                s.check(dev <= 1e-12, [&] { return "product form deviation " + num(dev) + " at " + where(); });
                s.check(dft_dev <= 1e-12, [&] { return "DFT deviation " + num(dft_dev) + " at " + where(); });
                sv.apply(inv);
                s.check(std::abs(sv.probability(av) - 1.0) <= 1e-12,
                        [&] { return "inverse not identity at " + where(); });
            }
        }
    }
    return s.take();
}

SuiteResult psi_modes(const VerifyOptions& opt) {
    Suite s("psi_mode_equivalence");
    const CircuitOptions copt{opt.oracle_drop_rule};
    std::mt19937_64 rng(opt.seed ^ 0x77u);
    const int max_n = std::min(opt.max_n, 6);
    for (int n = 1; n <= max_n; ++n) {
        const bool exhaustive = n <= 4;
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (int k = 1; k <= n + 1; ++k) {
            const std::uint64_t trials = exhaustive ? dim * dim : 48;
            for (std::uint64_t t = 0; t < trials; ++t) {
                const Register a = exhaustive ? reg(n, t / dim) : random_register(rng, n);
                const Register b = exhaustive ? reg(n, t % dim) : random_register(rng, n);
                const auto pc = full_distribution(a, b, n, k, PsiMode::classical, copt);
                const auto pq = full_distribution(a, b, n, k, PsiMode::quantum, copt);
                double dev = 0.0;
                for (std::size_t x = 0; x < pc.size(); ++x) dev = std::max(dev, std::abs(pc[x] - pq[x]));
                s.check(dev <= 1e-12, [&] { return cell(n, k, a, b) + " mode deviation " + num(dev); });
            }
        }
    }
    return s.take();
}

struct OracleSuites {
    SuiteResult oracle;
    SuiteResult dominance;
};

OracleSuites oracle_equivalence(const VerifyOptions& opt) {
    Suite eq("oracle_equivalence");
    Suite dom("bound_dominance");
    const CircuitOptions copt{opt.oracle_drop_rule};
    for (int n = 1; n <= opt.max_n; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (int k = 1; k <= n + 1; ++k) {
            const double bound = k <= n ? error_probability_bound(n, k) : 0.0;
            for (std::uint64_t av = 0; av < dim; ++av) {
                for (std::uint64_t bv = 0; bv < dim; ++bv) {
                    const Register a = reg(n, av);
                    const Register b = reg(n, bv);
                    const FidelityResult r = exact_fidelity(a, b, n, k);
                    const double p = draper_add(a, b, n, k, PsiMode::classical, copt);
                    eq.check(std::abs(r.fidelity - p) <= 1e-10, [&] {
                        return cell(n, k, a, b) + " analytic " + num(r.fidelity) + " oracle " + num(p);
                    });
                    if (bound <= 1.0) {
                        dom.check(r.error_probability <= bound, [&] {
                            return cell(n, k, a, b) + " error " + num(r.error_probability) + " > bound " + num(bound);
                        });
                    }
                }
            }
        }
    }
    // large registers, analytic only
    std::mt19937_64 rng(opt.seed ^ 0xb0u);
    for (int n : {16, 64, 256, 1000}) {
        for (int k = 4; k <= std::min(40, n); ++k) {
            const double bound = error_probability_bound(n, k);
            if (bound > 1.0) continue;
            for (int t = 0; t < 16; ++t) {
                const Register a = random_register(rng, n);
                const Register b = random_register(rng, n);
                const FidelityResult r = exact_fidelity(a, b, n, k);
                dom.check(r.error_probability <= bound, [&] {
                    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " error " + num(r.error_probability) +
                           " > bound " + num(bound);
                });
            }
            const WorstCase w = worst_case_fidelity(n, k, WorstCaseMode::witness);
            dom.check(w.result.error_probability <= bound, [&] {
                return "witness n=" + std::to_string(n) + " k=" + std::to_string(k) + " error " +
                       num(w.result.error_probability) + " > bound " + num(bound);
            });
        }
    }
    return {eq.take(), dom.take()};
}

SuiteResult closed_form(const VerifyOptions& opt) {
    Suite s("closed_form_equivalence");
    for (int n = 1; n <= opt.max_n; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (int k = 1; k <= n + 1; ++k) {
            for (std::uint64_t av = 0; av < dim; ++av) {
                for (std::uint64_t bv = 0; bv < dim; ++bv) {
                    const Register a = reg(n, av);
                    const Register b = reg(n, bv);
                    const FidelityResult fast = exact_fidelity(a, b, n, k);
                    const FidelityResult slow = overlap_product_fidelity(a, std::span<const Register>(&b, 1), n, k);
                    const ClosedForm cf = closed_form_fidelity(fast.total_carries(), k);
                    s.check(rel_close(fast.fidelity, cf.fidelity, 1e-12) && rel_close(slow.fidelity, cf.fidelity, 1e-12),
                            [&] {
                                return cell(n, k, a, b) + " carries=" + std::to_string(fast.total_carries()) +
                                       " profile " + num(fast.fidelity) + " overlaps " + num(slow.fidelity) +
                                       " closed " + num(cf.fidelity);
                            });
                    s.check(fast.carry_profile == slow.carry_profile,
                            [&] { return cell(n, k, a, b) + " carry profiles differ"; });
                }
            }
        }
    }
    return s.take();
}

SuiteResult witness_optimality(const VerifyOptions& opt) {
    Suite s("witness_optimality");
    for (int n = 1; n <= std::min(opt.max_n + 1, 8); ++n) {
        for (int k = 1; k <= n; ++k) {
            const WorstCase ex = worst_case_fidelity(n, k, WorstCaseMode::exhaustive);
            const WorstCase wit = worst_case_fidelity(n, k, WorstCaseMode::witness);
            s.check(ex.result.fidelity == wit.result.fidelity, [&] {
                return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " exhaustive " +
                       num(ex.result.fidelity) + " witness " + num(wit.result.fidelity);
            });
        }
    }
    return s.take();
}

SuiteResult multi_addition(const VerifyOptions& opt) {
    Suite s("multi_addition");
    const CircuitOptions copt{opt.oracle_drop_rule};
    std::mt19937_64 rng(opt.seed ^ 0x3cu);
    for (int n = 1; n <= std::min(opt.max_n, 5); ++n) {
        for (int m = 1; m <= 3; ++m) {
            const int bits = n * (m + 1);
            const bool exhaustive = bits <= 12;
            const std::uint64_t trials = exhaustive ? std::uint64_t{1} << bits : 400;
            for (int k = 1; k <= n + 1; ++k) {
                const double bound =
                    k <= n ? std::pow(multi_add_magnitude_bound(n, k, m), 2) : 0.0;
                for (std::uint64_t t = 0; t < trials; ++t) {
                    std::vector<Register> ops;
                    for (int slot = 0; slot <= m; ++slot) {
                        ops.push_back(exhaustive ? reg(n, (t >> (n * slot)) & ((std::uint64_t{1} << n) - 1))
                                                 : random_register(rng, n));
                    }
                    const std::span<const Register> addends(ops.data() + 1, ops.size() - 1);
                    const FidelityResult r = multi_add_fidelity(ops[0], addends, n, k);
                    const double p = draper_multi_add(ops[0], addends, n, k, PsiMode::classical, copt);
                    const auto describe = [&] {
                        std::string d = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " operands";
                        for (const auto& x : ops) d += ' ' + x.hex();
                        return d + " analytic " + num(r.fidelity) + " oracle " + num(p);
                    };
                    s.check(std::abs(r.fidelity - p) <= 1e-10, describe);
                    if (bound <= 1.0) s.check(r.error_probability <= bound, describe);
                }
            }
        }
    }
    return s.take();
}

SuiteResult exactness(const VerifyOptions& opt) {
    Suite s("untruncated_exactness");
    const CircuitOptions copt{opt.oracle_drop_rule};
    std::mt19937_64 rng(opt.seed ^ 0xe1u);
    for (int n = 1; n <= 10; ++n) {
        for (int k : {n, n + 1, n + 5}) {
            for (int t = 0; t < 256; ++t) {
                const Register a = random_register(rng, n);
                const Register b = random_register(rng, n);
                const FidelityResult r = exact_fidelity(a, b, n, k);
                s.check(r.fidelity == 1.0 && r.error_probability == 0.0,
                        [&] { return cell(n, k, a, b) + " analytic fidelity " + num(r.fidelity); });
                if (t < 8) {
                    const double p = draper_add(a, b, n, k, PsiMode::classical, copt);
                    s.check(p >= 1.0 - 1e-10, [&] { return cell(n, k, a, b) + " oracle " + num(p); });
                }
            }
        }
    }
    return s.take();
}

SuiteResult bound_lemmas(const VerifyOptions& opt) {
    Suite s("bound_lemmas");
    std::mt19937_64 rng(opt.seed ^ 0x1au);
    std::uniform_real_distribution<double> angle(-20.0, 20.0);
    for (int t = 0; t < 20000; ++t) {
        const double th = angle(rng);
        const double al = angle(rng);
        const double lhs = std::abs(std::polar(1.0, th) - std::polar(1.0, al));
        s.check(lhs <= std::abs(th - al) + 1e-14,
                [&] { return "|e^i" + num(th) + " - e^i" + num(al) + "| = " + num(lhs); });
    }
    // normalized per-qubit error vectors against pi sqrt2 2^-k
    for (int n = 2; n <= std::min(opt.max_n, 6); ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (int k = 1; k < n; ++k) {
            for (std::uint64_t av = 0; av < dim; ++av) {
                for (std::uint64_t bv = 0; bv < dim; ++bv) {
                    const Register a = reg(n, av);
                    const Register b = reg(n, bv);
                    const ProductPhaseState phi = psi_rotate(aqft_phases(a, n, k), b, k);
                    const ProductPhaseState psi = aqft_phases(a + b, n, k);
                    for (int j = k + 1; j <= n; ++j) {
                        const double gamma = std::abs(std::polar(1.0, phase_to_radians(phi.qubit(j))) -
                                                      std::polar(1.0, phase_to_radians(psi.qubit(j)))) /
                                             std::numbers::sqrt2;
                        s.check(gamma <= gamma_norm_bound(k) * (1.0 + 1e-12),
                                [&] { return cell(n, k, a, b) + " j=" + std::to_string(j) + " |gamma|=" + num(gamma); });
                    }
                }
            }
        }
    }
    // monotonicity of the closed-form bounds
    for (int n = 2; n <= 200; n += 7) {
        for (int k = 1; k < n; ++k) {
            const double here = error_magnitude_bound(n, k);
            if (k + 1 < n) {
                s.check(error_magnitude_bound(n, k + 1) < here,
                        [&] { return "not decreasing in k at n=" + std::to_string(n) + " k=" + std::to_string(k); });
            }
            s.check(error_magnitude_bound(n + 1, k) > here,
                    [&] { return "not increasing in n at n=" + std::to_string(n) + " k=" + std::to_string(k); });
            s.check(first_order_estimate(n, k) <= here,
                    [&] { return "first-order above bound at n=" + std::to_string(n) + " k=" + std::to_string(k); });
            s.check(multi_add_magnitude_bound(n, k, 2) > here,
                    [&] { return "multi bound not increasing in m at n=" + std::to_string(n); });
        }
    }
    return s.take();
}

}  // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.max_n < 1 || options.max_n > 8) {
        throw PreconditionError("verify: max_n must be in [1, 8]");
    }
    VerifyReport report;
    report.suites.push_back(truncation_identity(options));
    report.suites.push_back(multi_sum_identity(options));
    report.suites.push_back(phase_laws(options));
    report.suites.push_back(gate_counts(options));
    report.suites.push_back(qft_structure(options));
    report.suites.push_back(psi_modes(options));
    auto [oracle, dominance] = oracle_equivalence(options);
    report.suites.push_back(std::move(oracle));
    report.suites.push_back(std::move(dominance));
    report.suites.push_back(closed_form(options));
    report.suites.push_back(witness_optimality(options));
    report.suites.push_back(multi_addition(options));
    report.suites.push_back(exactness(options));
    report.suites.push_back(bound_lemmas(options));
    return report;
}

}  // namespace draper
