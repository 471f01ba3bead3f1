#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "draper/bounds.hpp"
#include "draper/register.hpp"

using namespace draper;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

bool close(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

Big big_magnitude(int n, int k, int m) {
    const Big x = boost::math::constants::pi<Big>() * sqrt(Big(2)) * m / pow(Big(2), k);
    return pow(1 + x, n - k) - 1;
}

}  // namespace

TEST_CASE("gamma") {
    CHECK(close(gamma_norm_bound(1), std::numbers::pi / std::numbers::sqrt2, 1e-15));
    CHECK(close(gamma_norm_bound(30), 4.1377571766808314686789e-9, 1e-15));
    for (int k = 1; k < 60; ++k) CHECK(gamma_norm_bound(k + 1) == gamma_norm_bound(k) / 2);
}

TEST_CASE("frozen reference values") {
    CHECK(close(error_magnitude_bound(1000, 30), 4.0136325076781060502e-6, 1e-13));
    CHECK(close(error_probability_bound(1000, 30), 1.6109245906690442022e-11, 1e-13));
    CHECK(close(error_magnitude_bound(10, 4), 3.3504377079121836697643, 1e-14));
    CHECK(close(error_probability_bound(6, 1), 119672.742985237159, 1e-13));
    CHECK(close(error_magnitude_bound(100, 10), 0.476453732279018284534, 1e-14));
    CHECK(close(first_order_estimate(100, 10), 0.390487758236575158429, 1e-14));
    CHECK(close(bound_report(100, 10).first_order_relative_gap, 0.180428797632128091945, 1e-12));
    CHECK(close(multi_add_magnitude_bound(1000, 30, 100), 4.0144291975141219107e-4, 1e-13));
}

TEST_CASE("bounds against 50-digit evaluation") {
    for (int n : {1, 2, 7, 31, 100, 1000, 100000}) {
        for (int k : {1, 2, 5, 10, 20, 30, 45, 60}) {
            if (k > n) continue;
            for (int m : {1, 3, 100}) {
                const double want = static_cast<double>(big_magnitude(n, k, m));
                const double got = multi_add_magnitude_bound(n, k, m);
                if (std::isinf(want)) {
                    CHECK(std::isinf(got));
                } else if (want == 0) {
                    CHECK(got == 0);
                } else {
                    CHECK(close(got, want, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("edges and clamping") {
    for (int n = 1; n <= 40; ++n) {
        CHECK(error_magnitude_bound(n, n) == 0.0);
        CHECK(error_probability_bound(n, n) == 0.0);
        CHECK(first_order_estimate(n, n) == 0.0);
        CHECK(multi_add_magnitude_bound(n, n, 7) == 0.0);
    }
    const auto r = bound_report(6, 1);
    CHECK(r.vacuous());
    CHECK(r.probability_bound > 1.0);
    CHECK(r.probability_bound_clamped == 1.0);
    CHECK_FALSE(bound_report(1000, 30).vacuous());
    CHECK(bound_report(30, 30).first_order_relative_gap == 0.0);
}

TEST_CASE("m = 1 reduces to the single-addition bound") {
    for (int n = 1; n <= 200; n += 7) {
        for (int k = 1; k <= n; k += 3) {
            CHECK(multi_add_magnitude_bound(n, k, 1) == error_magnitude_bound(n, k));
            const auto a = bound_report(n, k, 1);
            CHECK(a.magnitude_bound == error_magnitude_bound(n, k));
            CHECK(a.probability_bound == error_probability_bound(n, k));
        }
    }
}

TEST_CASE("monotonicity") {
    for (int n = 2; n <= 300; n += 11) {
        for (int k = 1; k + 1 < n && k < 50; ++k) {
            CHECK(error_magnitude_bound(n, k + 1) < error_magnitude_bound(n, k));
            CHECK(error_magnitude_bound(n + 1, k) > error_magnitude_bound(n, k));
            CHECK(multi_add_magnitude_bound(n, k, 2) > multi_add_magnitude_bound(n, k, 1));
            // the linearization never exceeds the bound
            CHECK(first_order_estimate(n, k) <= error_magnitude_bound(n, k));
        }
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(error_magnitude_bound(5, 6), PreconditionError);
    CHECK_THROWS_AS(error_magnitude_bound(5, 0), PreconditionError);
    CHECK_THROWS_AS(error_probability_bound(5, 6), PreconditionError);
    CHECK_THROWS_AS(first_order_estimate(5, 6), PreconditionError);
    CHECK_THROWS_AS(multi_add_magnitude_bound(5, 3, 0), PreconditionError);
    CHECK_THROWS_AS(bound_report(3, 4), PreconditionError);
}
