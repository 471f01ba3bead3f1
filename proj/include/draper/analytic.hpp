#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "draper/phase.hpp"
#include "draper/register.hpp"

namespace draper {

/// Unentangled n-qubit state  (x)_j (|0> + e(theta_j)|1>) / sqrt 2.
///
/// Qubit j (1-based) is the one whose untruncated Fourier phase is a / 2^j;
/// phases[j - 1] holds theta_j.
struct ProductPhaseState {
    int n = 0;
    std::vector<DyadicPhase> phases;

    [[nodiscard]] const DyadicPhase& qubit(int j) const { return phases.at(static_cast<std::size_t>(j - 1)); }
    friend bool operator==(const ProductPhaseState&, const ProductPhaseState&) = default;
};

struct FidelityResult {
    double fidelity = 1.0;
    double error_probability = 0.0;
    /// Entry m - 1 is the carry count q_m at truncation depth m = j - k,
    /// for m = 1 .. n - k (empty when k >= n).
    std::vector<std::uint64_t> carry_profile;
    int n = 0;
    int k = 0;
    /// Number of summands combined (2 for a single addition).
    std::size_t summands = 2;

    /// Sum of carry_profile.
    [[nodiscard]] std::uint64_t total_carries() const noexcept;
};

/// 0.x_j x_{j-1} ... x_{j-c+1} with c = min(j, k): the phase qubit j picks up
/// from operand x when rotations finer than 2^-k turns are dropped.
DyadicPhase fourier_digit_phase(const Register& x, int j, int k);

/// Product-form phases of A|a>, the threshold-k approximate QFT.
/// k >= n gives the exact QFT.
ProductPhaseState aqft_phases(const Register& a, int n, int k);

/// Applies the truncated rotation bank Psi_b at threshold k.
ProductPhaseState psi_rotate(const ProductPhaseState& state, const Register& b, int k);

/// |<psi(theta)|psi(phi)>| = |cos(pi (phi - theta))| for normalized qubit states.
double qubit_overlap_magnitude(const DyadicPhase& theta, const DyadicPhase& phi);

/// Success probability of the threshold-k Draper adder on |a>, b.
/// Per truncated qubit the phase defect is carry_indicator(a, b, j - k) * 2^-k,
/// so this reads the carry pattern and never builds phases.
FidelityResult exact_fidelity(const Register& a, const Register& b, int n, int k);

/// Success probability of A^dag Psi_{b_m} ... Psi_{b_1} A |x0> against the
/// sum of all operands mod 2^n.
FidelityResult multi_add_fidelity(const Register& x0, std::span<const Register> addends, int n, int k);

/// Reference route: builds phi = Psi ... Psi A|x0> and psi = A|sum> as
/// product states and multiplies the per-qubit overlaps.
FidelityResult overlap_product_fidelity(const Register& x0, std::span<const Register> addends, int n,
                                        int k);

/// [cos^2(pi 2^-k)]^carries, evaluated in log space.
struct ClosedForm {
    double fidelity;
    double error_probability;
};
ClosedForm closed_form_fidelity(std::uint64_t carries, int k);

enum class WorstCaseMode { exhaustive, witness };

struct WorstCase {
    FidelityResult result;
    Register a;
    Register b;
};

inline constexpr int kDefaultExhaustiveLimit = 10;

/// Exhaustive mode scans all 2^(2n) operand pairs and returns the first
/// minimizer in (a, b) lexicographic order. Witness mode returns
/// (2^n - 1, 1), which carries at every position.
WorstCase worst_case_fidelity(int n, int k, WorstCaseMode mode, int exhaustive_limit = kDefaultExhaustiveLimit);

}  // namespace draper
