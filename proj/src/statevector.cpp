#include "draper/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace draper {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

StateVector::Amplitude unit_phase(const DyadicPhase& p) {
    if (p.is_zero()) return {1.0, 0.0};
    if (p == DyadicPhase::unit(1)) return {-1.0, 0.0};
    return std::polar(1.0, phase_to_radians(p));
}

void require_n_k(int n, int k) {
    if (n < 1) throw PreconditionError("n must be at least 1");
    if (k < 1) throw PreconditionError("threshold k must be at least 1");
}

void require_width(const Register& x, int n) {
    if (x.width() != static_cast<std::size_t>(n)) {
        throw PreconditionError("operand width " + std::to_string(x.width()) + " does not match n=" +
                                std::to_string(n));
    }
}

// Psi_b with b's bits living on qubits control_base .. control_base + n - 1
// in quantum mode.
Circuit psi_stage(const Register& b, int n, int k, PsiMode mode, CircuitOptions options, int control_base) {
    Circuit out;
    for (int j = 1; j <= n; ++j) {
        const int target = n - j;
        for (int d = 1; d <= j; ++d) {
            if (!keeps_rotation(d, k, options.drop_rule)) continue;
            const int bit = j - d;
            if (mode == PsiMode::classical) {
                if (b.bit(static_cast<std::size_t>(bit))) {
                    out.emplace_back(PhaseOnQubit{target, DyadicPhase::unit(static_cast<std::size_t>(d))});
                }
            } else {
                out.emplace_back(ControlledRotation{control_base + bit, target,
                                                    DyadicPhase::unit(static_cast<std::size_t>(d))});
            }
        }
    }
    return out;
}

// Runs A^dag Psi...Psi A on |x0> (x) |addends> and returns the final state.
StateVector run_pipeline(const Register& x0, std::span<const Register> addends, int n, int k, PsiMode mode,
                         CircuitOptions options, OracleLimits limits, std::uint64_t& upper_bits) {
    require_n_k(n, k);
    require_width(x0, n);
    if (addends.empty()) throw PreconditionError("at least one addend required");
    for (const auto& b : addends) require_width(b, n);

    const std::size_t registers = mode == PsiMode::quantum ? addends.size() + 1 : 1;
    const auto qubits = static_cast<long long>(registers) * n;
    const int cap = mode == PsiMode::quantum ? limits.max_quantum_qubits : limits.max_classical_qubits;
    if (qubits > cap) {
        throw SizeLimitError("statevector oracle needs " + std::to_string(qubits) + " qubits; limit is " +
                             std::to_string(cap));
    }

    upper_bits = 0;
    if (mode == PsiMode::quantum) {
        for (std::size_t i = 0; i < addends.size(); ++i) {
            upper_bits |= addends[i].low_u64() << (static_cast<std::size_t>(n) * (i + 1));
        }
    }
    StateVector sv(static_cast<int>(qubits), x0.low_u64() | upper_bits);
    const Circuit qft = qft_circuit(n, k, options);
    sv.apply(qft);
    for (std::size_t i = 0; i < addends.size(); ++i) {
        sv.apply(psi_stage(addends[i], n, k, mode, options, n * static_cast<int>(i + 1)));
    }
    sv.apply(inverse_circuit(qft));
    return sv;
}

}  // namespace

StateVector::StateVector(int num_qubits, std::uint64_t index) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 30) {
        throw SizeLimitError("statevector supports 0..30 qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    if (index >= amps_.size()) throw PreconditionError("basis index out of range");
    amps_[index] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw PreconditionError("amplitude count must be a power of two");
    }
    StateVector sv;
    sv.num_qubits_ = std::countr_zero(amps.size());
    sv.amps_ = std::move(amps);
    return sv;
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw PreconditionError("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply(const GateOp& gate) {
    const std::size_t dim = amps_.size();
    std::visit(
        Overloaded{
            [&](const Hadamard& g) {
                check_qubit(g.target);
                const std::size_t stride = std::size_t{1} << g.target;
                const double r = std::numbers::sqrt2 / 2.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & stride) continue;
                    const Amplitude lo = amps_[i];
                    const Amplitude hi = amps_[i | stride];
                    amps_[i] = r * (lo + hi);
                    amps_[i | stride] = r * (lo - hi);
                }
            },
            [&](const ControlledRotation& g) {
                check_qubit(g.control);
                check_qubit(g.target);
                if (g.control == g.target) throw PreconditionError("control and target must differ");
                const std::size_t mask = (std::size_t{1} << g.control) | (std::size_t{1} << g.target);
                const Amplitude f = unit_phase(g.phase);
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & mask) == mask) amps_[i] *= f;
                }
            },
            [&](const PhaseOnQubit& g) {
                check_qubit(g.target);
                const std::size_t bit = std::size_t{1} << g.target;
                const Amplitude f = unit_phase(g.phase);
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & bit) amps_[i] *= f;
                }
            },
            [&](const Swap& g) {
                check_qubit(g.first);
                check_qubit(g.second);
                if (g.first == g.second) return;
                const std::size_t m1 = std::size_t{1} << g.first;
                const std::size_t m2 = std::size_t{1} << g.second;
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & m1) && !(i & m2)) std::swap(amps_[i], amps_[(i ^ m1) | m2]);
                }
            },
        },
        gate);
}

void StateVector::apply(std::span<const GateOp> circuit) {
    for (const auto& g : circuit) apply(g);
}

StateVector apply_gate(StateVector sv, const GateOp& gate) {
    sv.apply(gate);
    return sv;
}

bool keeps_rotation(int d, int k, DropRule rule) {
    return rule == DropRule::strictly_finer ? d <= k : d < k;
}

Circuit qft_circuit(int n, int k, CircuitOptions options) {
    require_n_k(n, k);
    Circuit out;
    for (int target = n - 1; target >= 0; --target) {
        out.emplace_back(Hadamard{target});
        for (int control = target - 1; control >= 0; --control) {
            const int d = target - control + 1;
            if (!keeps_rotation(d, k, options.drop_rule)) continue;
            out.emplace_back(ControlledRotation{control, target, DyadicPhase::unit(static_cast<std::size_t>(d))});
        }
    }
    for (int i = 0; i < n / 2; ++i) out.emplace_back(Swap{i, n - 1 - i});
    return out;
}

Circuit inverse_circuit(std::span<const GateOp> circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(std::visit(Overloaded{
                                     [](const ControlledRotation& g) -> GateOp {
                                         return ControlledRotation{g.control, g.target, -g.phase};
                                     },
                                     [](const PhaseOnQubit& g) -> GateOp { return PhaseOnQubit{g.target, -g.phase}; },
                                     [](const auto& g) -> GateOp { return g; },
                                 },
                                 *it));
    }
    return out;
}

Circuit psi_b_circuit(const Register& b, int n, int k, PsiMode mode, CircuitOptions options,
                      OracleLimits limits) {
    require_n_k(n, k);
    require_width(b, n);
    if (mode == PsiMode::quantum && 2 * n > limits.max_quantum_qubits) {
        throw SizeLimitError("quantum-mode Psi_b needs " + std::to_string(2 * n) + " qubits; limit is " +
                             std::to_string(limits.max_quantum_qubits));
    }
    return psi_stage(b, n, k, mode, options, n);
}

GateCounts count_gates(std::span<const GateOp> circuit) {
    GateCounts c;
    for (const auto& g : circuit) {
        std::visit(Overloaded{
                       [&](const Hadamard&) { ++c.hadamard; },
                       [&](const ControlledRotation&) { ++c.controlled_rotation; },
                       [&](const PhaseOnQubit&) { ++c.phase; },
                       [&](const Swap&) { ++c.swap; },
                   },
                   g);
    }
    return c;
}

double draper_add(const Register& a, const Register& b, int n, int k, PsiMode mode, CircuitOptions options,
                  OracleLimits limits) {
    return draper_multi_add(a, std::span<const Register>(&b, 1), n, k, mode, options, limits);
}

double draper_multi_add(const Register& x0, std::span<const Register> addends, int n, int k, PsiMode mode,
                        CircuitOptions options, OracleLimits limits) {
    std::uint64_t upper = 0;
    const StateVector sv = run_pipeline(x0, addends, n, k, mode, options, limits, upper);
    Register sum = x0;
    for (const auto& b : addends) sum += b;
    return sv.probability(sum.low_u64() | upper);
}

std::vector<double> full_distribution(const Register& a, const Register& b, int n, int k, PsiMode mode,
                                      CircuitOptions options, OracleLimits limits) {
    std::uint64_t upper = 0;
    const StateVector sv = run_pipeline(a, std::span<const Register>(&b, 1), n, k, mode, options, limits, upper);
    // b's register is left in its basis state, so the a-register marginal is
    // the slice at b.
    std::vector<double> out(std::size_t{1} << n);
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = sv.probability(x | upper);
    return out;
}

StateVector product_state_vector(const ProductPhaseState& state) {
    const int n = state.n;
    if (n < 1 || n > 30) throw SizeLimitError("product_state_vector supports 1..30 qubits");
    std::vector<StateVector::Amplitude> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) factors.push_back(unit_phase(state.qubit(j)));
    const double scale = std::ldexp(1.0, -n);
    std::vector<StateVector::Amplitude> amps(std::size_t{1} << n);
    for (std::size_t x = 0; x < amps.size(); ++x) {
        StateVector::Amplitude v{std::sqrt(scale), 0.0};
        for (int j = 1; j <= n; ++j) {
            if ((x >> (n - j)) & 1U) v *= factors[static_cast<std::size_t>(j - 1)];
        }
        amps[x] = v;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace draper
