#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "draper/analytic.hpp"
#include "draper/phase.hpp"
#include "draper/register.hpp"

namespace draper {

// Qubit indices are little-endian: basis index bit i is qubit i. In the
// adder, qubits 0..n-1 hold the a register (qubit i = a_{i+1}) and, in
// quantum mode, qubits n..2n-1 hold b.
//
// Before its terminal swaps the QFT leaves the phase a/2^j on qubit j - 1;
// after the swaps it sits on qubit n - j, which is where Psi_b addresses it.

struct Hadamard {
    int target;
};

/// R: |c>|t> -> e(phase c t) |c>|t>.
struct ControlledRotation {
    int control;
    int target;
    DyadicPhase phase;
};

/// Single-qubit phase e(phase) on |1>.
struct PhaseOnQubit {
    int target;
    DyadicPhase phase;
};

struct Swap {
    int first;
    int second;
};

using GateOp = std::variant<Hadamard, ControlledRotation, PhaseOnQubit, Swap>;
using Circuit = std::vector<GateOp>;

class StateVector {
public:
    using Amplitude = std::complex<double>;

    /// |index> on q qubits.
    StateVector(int num_qubits, std::uint64_t index);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }
    [[nodiscard]] double probability(std::uint64_t index) const { return std::norm(amps_.at(index)); }
    [[nodiscard]] double norm_squared() const noexcept;

    void apply(const GateOp& gate);
    void apply(std::span<const GateOp> circuit);

    /// Takes ownership of explicit amplitudes; size must be a power of two.
    static StateVector from_amplitudes(std::vector<Amplitude> amps);

private:
    StateVector() = default;
    void check_qubit(int q) const;

    int num_qubits_ = 0;
    std::vector<Amplitude> amps_;
};

StateVector apply_gate(StateVector sv, const GateOp& gate);

/// Which controlled rotations survive the threshold. `strictly_finer`
/// deletes phase 2^-d iff d > k. `drop_at_threshold` also deletes d == k; it
/// is wrong on purpose and exists so verification can prove it notices.
enum class DropRule { strictly_finer, drop_at_threshold };

struct CircuitOptions {
    DropRule drop_rule = DropRule::strictly_finer;
};

enum class PsiMode { classical, quantum };

struct OracleLimits {
    int max_classical_qubits = 14;
    int max_quantum_qubits = 14;
};

/// True when a rotation by 2^-d turns survives threshold k.
bool keeps_rotation(int d, int k, DropRule rule = DropRule::strictly_finer);

/// Coppersmith QFT on qubits 0..n-1 with rotations finer than 2^-k deleted,
/// followed by the floor(n/2) reversal swaps.
Circuit qft_circuit(int n, int k, CircuitOptions options = {});

/// Reversed gate list with every phase negated.
Circuit inverse_circuit(std::span<const GateOp> circuit);

/// Truncated rotation bank Psi_b. Classical mode emits PhaseOnQubit for each
/// set bit of b; quantum mode emits ControlledRotation from b's qubits.
Circuit psi_b_circuit(const Register& b, int n, int k, PsiMode mode = PsiMode::classical,
                      CircuitOptions options = {}, OracleLimits limits = {});

struct GateCounts {
    std::size_t hadamard = 0;
    std::size_t controlled_rotation = 0;
    std::size_t phase = 0;
    std::size_t swap = 0;
    friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

GateCounts count_gates(std::span<const GateOp> circuit);

/// |<a+b| A^dag Psi_b A |a>|^2 by dense simulation.
double draper_add(const Register& a, const Register& b, int n, int k, PsiMode mode = PsiMode::classical,
                  CircuitOptions options = {}, OracleLimits limits = {});

/// Same pipeline with one Psi stage per addend.
double draper_multi_add(const Register& x0, std::span<const Register> addends, int n, int k,
                        PsiMode mode = PsiMode::classical, CircuitOptions options = {},
                        OracleLimits limits = {});

/// Outcome probabilities of the a register after the truncated adder.
std::vector<double> full_distribution(const Register& a, const Register& b, int n, int k,
                                      PsiMode mode = PsiMode::classical, CircuitOptions options = {},
                                      OracleLimits limits = {});

/// Dense vector of a product state, with qubit j placed at its post-swap
/// position n - j.
StateVector product_state_vector(const ProductPhaseState& state);

}  // namespace draper
