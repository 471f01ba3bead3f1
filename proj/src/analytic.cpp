#include "draper/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace draper {

namespace {

void require_adder_args(int n, int k) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    if (k < 1) throw PreconditionError("threshold k must be at least 1");
}

void require_width(const Register& x, int n, const char* name) {
    if (x.width() != static_cast<std::size_t>(n)) {
        throw PreconditionError(std::string(name) + " has width " + std::to_string(x.width()) +
                                ", expected " + std::to_string(n));
    }
}

// sin^2(pi d) for d = distance to the nearest integer, exact at 0 and 1/2.
double defect_sin_sq(const DyadicPhase& delta) {
    const DyadicPhase d = delta.distance_to_integer();
    if (d.is_zero()) return 0.0;
    if (d == DyadicPhase::unit(1)) return 1.0;
    const double s = std::sin(std::numbers::pi * d.to_double());
    return s * s;
}

struct LogAccumulator {
    double log_fidelity = 0.0;
    bool annihilated = false;

    void add(double sin_sq) {
        if (sin_sq >= 1.0) {
            annihilated = true;
        } else if (sin_sq > 0.0) {
            log_fidelity += std::log1p(-sin_sq);
        }
    }

    void finish(double& fidelity, double& error) const {
        if (annihilated) {
            fidelity = 0.0;
            error = 1.0;
        } else {
            fidelity = std::exp(log_fidelity);
            error = -std::expm1(log_fidelity);
        }
    }
};

FidelityResult from_profile(std::vector<std::uint64_t> profile, int n, int k, std::size_t summands) {
    FidelityResult out;
    out.n = n;
    out.k = k;
    out.summands = summands;
    LogAccumulator acc;
    for (std::uint64_t q : profile) {
        if (q == 0) continue;
        acc.add(defect_sin_sq(DyadicPhase(q, static_cast<std::size_t>(k))));
    }
    acc.finish(out.fidelity, out.error_probability);
    out.carry_profile = std::move(profile);
    return out;
}

Register sum_mod(const Register& x0, std::span<const Register> addends) {
    Register s = x0;
    for (const auto& b : addends) s += b;
    return s;
}

}  // namespace

std::uint64_t FidelityResult::total_carries() const noexcept {
    return std::accumulate(carry_profile.begin(), carry_profile.end(), std::uint64_t{0});
}

DyadicPhase fourier_digit_phase(const Register& x, int j, int k) {
    if (j < 1 || static_cast<std::size_t>(j) > x.width()) {
        throw PreconditionError("qubit index " + std::to_string(j) + " out of range");
    }
    if (k < 1) throw PreconditionError("threshold k must be at least 1");
    const auto digits = static_cast<std::size_t>(std::min(j, k));
    const std::size_t lo = static_cast<std::size_t>(j) - digits;
    return {x.slice(lo, digits), digits};
}

ProductPhaseState aqft_phases(const Register& a, int n, int k) {
    require_adder_args(n, k);
    require_width(a, n, "a");
    ProductPhaseState state{n, {}};
    state.phases.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) state.phases.push_back(fourier_digit_phase(a, j, k));
    return state;
}

ProductPhaseState psi_rotate(const ProductPhaseState& state, const Register& b, int k) {
    require_adder_args(state.n, k);
    require_width(b, state.n, "b");
    ProductPhaseState out = state;
    for (int j = 1; j <= state.n; ++j) {
        out.phases[static_cast<std::size_t>(j - 1)] += fourier_digit_phase(b, j, k);
    }
    return out;
}

double qubit_overlap_magnitude(const DyadicPhase& theta, const DyadicPhase& phi) {
    const DyadicPhase d = (phi - theta).distance_to_integer();
    if (d.is_zero()) return 1.0;
    if (d == DyadicPhase::unit(1)) return 0.0;
    return std::cos(std::numbers::pi * d.to_double());
}

FidelityResult exact_fidelity(const Register& a, const Register& b, int n, int k) {
    require_adder_args(n, k);
    require_width(a, n, "a");
    require_width(b, n, "b");
    std::vector<std::uint64_t> profile;
    if (k < n) {
        const Register carries = carry_bits(a, b);
        profile.resize(static_cast<std::size_t>(n - k));
        for (int m = 1; m <= n - k; ++m) {
            profile[static_cast<std::size_t>(m - 1)] = carries.bit(static_cast<std::size_t>(m)) ? 1 : 0;
        }
    }
    return from_profile(std::move(profile), n, k, 2);
}

FidelityResult multi_add_fidelity(const Register& x0, std::span<const Register> addends, int n, int k) {
    require_adder_args(n, k);
    if (addends.empty()) throw PreconditionError("multi_add_fidelity: addend list is empty");
    require_width(x0, n, "x0");
    for (const auto& b : addends) require_width(b, n, "addend");

    std::vector<Register> summands;
    summands.reserve(addends.size() + 1);
    summands.push_back(x0);
    summands.insert(summands.end(), addends.begin(), addends.end());

    std::vector<std::uint64_t> profile;
    if (k < n) {
        profile.resize(static_cast<std::size_t>(n - k));
        for (int m = 1; m <= n - k; ++m) {
            profile[static_cast<std::size_t>(m - 1)] = carry_count_multi(summands, m);
        }
    }
    return from_profile(std::move(profile), n, k, summands.size());
}

FidelityResult overlap_product_fidelity(const Register& x0, std::span<const Register> addends, int n,
                                        int k) {
    require_adder_args(n, k);
    if (addends.empty()) throw PreconditionError("overlap_product_fidelity: addend list is empty");
    ProductPhaseState rotated = aqft_phases(x0, n, k);
    for (const auto& b : addends) rotated = psi_rotate(rotated, b, k);
    const ProductPhaseState reference = aqft_phases(sum_mod(x0, addends), n, k);

    FidelityResult out;
    out.n = n;
    out.k = k;
    out.summands = addends.size() + 1;
    LogAccumulator acc;
    for (int j = 1; j <= n; ++j) {
        // sum of truncations minus truncation of the sum: q * 2^-k
        const DyadicPhase delta = reference.qubit(j) - rotated.qubit(j);
        acc.add(defect_sin_sq(delta));
        if (j > k) {
            // q is recovered mod 2^k, exact whenever summands <= 2^k
            const std::size_t shift = static_cast<std::size_t>(k) - delta.exponent();
            out.carry_profile.push_back(delta.is_zero() ? 0 : (delta.numerator().low_u64() << shift));
        }
    }
    acc.finish(out.fidelity, out.error_probability);
    return out;
}

ClosedForm closed_form_fidelity(std::uint64_t carries, int k) {
    if (k < 1) throw PreconditionError("threshold k must be at least 1");
    if (carries == 0) return {1.0, 0.0};
    const double s = std::sin(std::ldexp(std::numbers::pi, -k));
    const double per_carry = std::log1p(-s * s);
    if (std::isinf(per_carry)) return {0.0, 1.0};
    const double log_fidelity = static_cast<double>(carries) * per_carry;
    return {std::exp(log_fidelity), -std::expm1(log_fidelity)};
}

WorstCase worst_case_fidelity(int n, int k, WorstCaseMode mode, int exhaustive_limit) {
    require_adder_args(n, k);
    if (mode == WorstCaseMode::witness) {
        Register a = Register::all_ones(static_cast<std::size_t>(n));
        Register b(static_cast<std::size_t>(n), 1);
        FidelityResult r = exact_fidelity(a, b, n, k);
        return {std::move(r), std::move(a), std::move(b)};
    }
    if (n > exhaustive_limit) {
        throw SizeLimitError("exhaustive worst-case scan limited to n <= " + std::to_string(exhaustive_limit) +
                             " (requested n=" + std::to_string(n) + ")");
    }
    if (n > 31) throw SizeLimitError("exhaustive worst-case scan needs n <= 31");

    // Fidelity is decreasing in the carry count, so maximize popcount of the
    // carries at depths 1..n-k.
    const std::uint64_t size = std::uint64_t{1} << n;
    const std::uint64_t mask =
        k >= n ? 0 : (((std::uint64_t{1} << (n - k)) - 1) << 1);
    int best = -1;
    std::uint64_t best_a = 0;
    std::uint64_t best_b = 0;
    for (std::uint64_t a = 0; a < size; ++a) {
        for (std::uint64_t b = 0; b < size; ++b) {
            const int c = std::popcount((a ^ b ^ (a + b)) & mask);
            if (c > best) {
                best = c;
                best_a = a;
                best_b = b;
            }
        }
    }
    Register a(static_cast<std::size_t>(n), best_a);
    Register b(static_cast<std::size_t>(n), best_b);
    FidelityResult r = exact_fidelity(a, b, n, k);
    return {std::move(r), std::move(a), std::move(b)};
}

}  // namespace draper
