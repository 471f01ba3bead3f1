#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "draper/analytic.hpp"
#include "draper/statevector.hpp"

using namespace draper;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

Register reg(int n, std::uint64_t v) { return Register(static_cast<std::size_t>(n), v); }

Register random_register(std::mt19937_64& rng, int width) {
    Register r(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) r.set_bit(static_cast<std::size_t>(i), (rng() & 1U) != 0);
    return r;
}

// prod over carries of cos^2(pi q 2^-k) at 50 digits
double reference_fidelity(const std::vector<std::uint64_t>& profile, int k) {
    Big f = 1;
    const Big pi = boost::math::constants::pi<Big>();
    for (auto q : profile) {
        const Big c = cos(pi * Big(q) / pow(Big(2), k));
        f *= c * c;
    }
    return static_cast<double>(f);
}

}  // namespace

TEST_CASE("aqft phases") {
    const auto zero = aqft_phases(reg(5, 0), 5, 2);
    for (const auto& p : zero.phases) CHECK(p.is_zero());

    const auto one = aqft_phases(reg(3, 1), 3, 3);
    CHECK(one.qubit(1) == DyadicPhase(1, 1));
    CHECK(one.qubit(2) == DyadicPhase(1, 2));
    CHECK(one.qubit(3) == DyadicPhase(1, 3));

    const auto six = aqft_phases(reg(3, 0b110), 3, 1);
    CHECK(six.qubit(1).is_zero());
    CHECK(six.qubit(2) == DyadicPhase(1, 1));
    CHECK(six.qubit(3) == DyadicPhase(1, 1));

    CHECK_THROWS_AS(aqft_phases(reg(3, 1), 3, 0), PreconditionError);
    CHECK_THROWS_AS(aqft_phases(reg(4, 1), 3, 2), PreconditionError);
}

TEST_CASE("aqft phases match the dense AQFT") {
    for (int n = 1; n <= 5; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            for (std::uint64_t a = 0; a < (1U << n); ++a) {
                StateVector sv(n, a);
                sv.apply(qft_circuit(n, k));
                const StateVector expect = product_state_vector(aqft_phases(reg(n, a), n, k));
                double dev = 0;
                for (std::size_t i = 0; i < sv.dimension(); ++i) {
                    dev = std::max(dev, std::abs(sv.amplitude(i) - expect.amplitude(i)));
                }
                CHECK(dev < 1e-12);
            }
        }
    }
}

TEST_CASE("psi_rotate") {
    std::mt19937_64 rng(7);
    const auto state = aqft_phases(random_register(rng, 9), 9, 4);
    CHECK(psi_rotate(state, reg(9, 0), 4) == state);

    // untruncated addition is exact
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 70);
        const Register a = random_register(rng, n);
        const Register b = random_register(rng, n);
        Register s = a;
        s += b;
        CHECK(psi_rotate(aqft_phases(a, n, n), b, n) == aqft_phases(s, n, n));
    }

    // a = 1, b = 1, n = 3, k = 2
    const auto rotated = psi_rotate(aqft_phases(reg(3, 1), 3, 2), reg(3, 1), 2);
    const auto reference = aqft_phases(reg(3, 2), 3, 2);
    CHECK(rotated.qubit(2) == DyadicPhase(1, 1));
    CHECK(rotated.qubit(2) == reference.qubit(2));
    CHECK(rotated.qubit(3).is_zero());
    CHECK(reference.qubit(3) == DyadicPhase(1, 2));

    CHECK_THROWS_AS(psi_rotate(state, reg(8, 1), 4), PreconditionError);
}

TEST_CASE("qubit overlap") {
    const DyadicPhase t(5, 7);
    CHECK(qubit_overlap_magnitude(t, t) == 1.0);
    CHECK(qubit_overlap_magnitude(DyadicPhase(), DyadicPhase(1, 1)) == 0.0);
    CHECK(qubit_overlap_magnitude(DyadicPhase(), DyadicPhase(1, 2)) ==
          doctest::Approx(0.7071067811865476).epsilon(1e-15));
    CHECK(qubit_overlap_magnitude(DyadicPhase(3, 2), DyadicPhase()) ==
          doctest::Approx(0.7071067811865476).epsilon(1e-15));
}

TEST_CASE("exact fidelity examples") {
    std::mt19937_64 rng(11);
    const Register a = random_register(rng, 40);
    const auto r0 = exact_fidelity(a, reg(40, 0), 40, 5);
    CHECK(r0.fidelity == 1.0);
    CHECK(r0.error_probability == 0.0);
    CHECK(r0.total_carries() == 0);

    const auto exact = exact_fidelity(a, random_register(rng, 40), 40, 40);
    CHECK(exact.fidelity == 1.0);
    CHECK(exact.carry_profile.empty());

    const auto r = exact_fidelity(reg(3, 1), reg(3, 1), 3, 2);
    CHECK(r.fidelity == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.error_probability == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.carry_profile == std::vector<std::uint64_t>{1});
    CHECK(draper_add(reg(3, 1), reg(3, 1), 3, 2) == doctest::Approx(0.5).epsilon(1e-12));

    // only one qubit is truncated at n = 3, k = 2, so the witness also loses half
    const auto w = exact_fidelity(reg(3, 7), reg(3, 1), 3, 2);
    CHECK(w.fidelity == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(draper_add(reg(3, 7), reg(3, 1), 3, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact fidelity matches a high-precision product") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 300);
        const int k = 1 + static_cast<int>(rng() % n);
        const auto r = exact_fidelity(random_register(rng, n), random_register(rng, n), n, k);
        const double ref = reference_fidelity(r.carry_profile, k);
        CHECK(std::abs(r.fidelity - ref) <= 1e-13 * ref + 1e-300);
        CHECK(std::abs(r.fidelity + r.error_probability - 1.0) < 1e-15);
    }
}

TEST_CASE("exact fidelity agrees with the overlap product") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 120);
        const int k = 1 + static_cast<int>(rng() % (n + 2));
        const Register a = random_register(rng, n);
        const std::vector<Register> b{random_register(rng, n)};
        const auto fast = exact_fidelity(a, b[0], n, k);
        const auto slow = overlap_product_fidelity(a, b, n, k);
        CHECK(fast.carry_profile == slow.carry_profile);
        CHECK(std::abs(fast.fidelity - slow.fidelity) <= 1e-12 * std::max(fast.fidelity, 1e-300));
    }
}

TEST_CASE("fidelity decreases with each added carry") {
    for (int k = 1; k <= 12; ++k) {
        double prev = 1.0;
        for (std::uint64_t c = 1; c <= 40; ++c) {
            const auto f = closed_form_fidelity(c, k).fidelity;
            if (k > 1) {
                CHECK(f < prev);
            } else {
                CHECK(f == 0.0);
            }
            prev = f;
        }
    }
    CHECK(closed_form_fidelity(0, 3).fidelity == 1.0);
    CHECK(closed_form_fidelity(1, 2).fidelity == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("multi-addition") {
    std::mt19937_64 rng(31);
    const Register x0 = random_register(rng, 12);
    const std::vector<Register> zeros(4, reg(12, 0));
    CHECK(multi_add_fidelity(x0, zeros, 12, 3).fidelity == 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 200);
        const int k = 1 + static_cast<int>(rng() % (n + 1));
        const Register a = random_register(rng, n);
        const std::vector<Register> b{random_register(rng, n)};
        const auto single = exact_fidelity(a, b[0], n, k);
        const auto multi = multi_add_fidelity(a, b, n, k);
        CHECK(single.fidelity == multi.fidelity);
        CHECK(single.error_probability == multi.error_probability);
        CHECK(single.carry_profile == multi.carry_profile);
    }

    // x0 = 3 plus 3 twice at n = 4, k = 2: two units of 2^-2 on qubit 3
    const std::vector<Register> threes(2, reg(4, 3));
    const auto r = multi_add_fidelity(reg(4, 3), threes, 4, 2);
    CHECK(r.fidelity == 0.0);
    CHECK(r.error_probability == 1.0);
    CHECK(draper_multi_add(reg(4, 3), threes, 4, 2) < 1e-12);

    CHECK_THROWS_AS(multi_add_fidelity(x0, std::vector<Register>{}, 12, 3), PreconditionError);
}

TEST_CASE("worst case") {
    for (int n = 1; n <= 6; ++n) {
        for (auto mode : {WorstCaseMode::exhaustive, WorstCaseMode::witness}) {
            const auto w = worst_case_fidelity(n, n, mode);
            CHECK(w.result.fidelity == 1.0);
            CHECK(w.result.total_carries() == 0);
        }
    }

    const auto ex = worst_case_fidelity(3, 2, WorstCaseMode::exhaustive);
    CHECK(ex.result.fidelity == doctest::Approx(0.5).epsilon(1e-15));
    const auto wit = worst_case_fidelity(3, 2, WorstCaseMode::witness);
    CHECK(wit.a == reg(3, 7));
    CHECK(wit.b == reg(3, 1));

    // witness matches the exhaustive minimum on small cells
    for (int n = 1; n <= 7; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto e = worst_case_fidelity(n, k, WorstCaseMode::exhaustive);
            const auto v = worst_case_fidelity(n, k, WorstCaseMode::witness);
            CHECK(e.result.fidelity == v.result.fidelity);
        }
    }

    const auto big = worst_case_fidelity(1000, 30, WorstCaseMode::witness);
    CHECK(big.result.total_carries() == 970);
    CHECK(big.result.error_probability == doctest::Approx(8.3037017097892224360e-15).epsilon(1e-12));
    CHECK(big.result.error_probability < 1.6e-11);

    CHECK_THROWS_AS(worst_case_fidelity(11, 3, WorstCaseMode::exhaustive), SizeLimitError);
}
