#include "draper/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "draper/register.hpp"

namespace draper {

namespace {

constexpr double kPiSqrt2 = std::numbers::pi * std::numbers::sqrt2;

void require_range(int n, int k) {
    if (k < 1) throw PreconditionError("bound: k must be at least 1");
    if (k > n) {
        throw PreconditionError("bound: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    }
}

// (1 + x)^e - 1 without cancellation for tiny x.
double pow1p_minus_one(double x, int e) {
    if (e == 0) return 0.0;
    return std::expm1(static_cast<double>(e) * std::log1p(x));
}

}  // namespace

double gamma_norm_bound(int k) {
    if (k < 1) throw PreconditionError("gamma_norm_bound: k must be at least 1");
    return std::ldexp(kPiSqrt2, -k);
}

double error_magnitude_bound(int n, int k) {
    require_range(n, k);
    return pow1p_minus_one(gamma_norm_bound(k), n - k);
}

double error_probability_bound(int n, int k) {
    const double b = error_magnitude_bound(n, k);
    return b * b;
}

double first_order_estimate(int n, int k) {
    require_range(n, k);
    return static_cast<double>(n - k) * gamma_norm_bound(k);
}

double multi_add_magnitude_bound(int n, int k, int m) {
    require_range(n, k);
    if (m < 1) throw PreconditionError("multi_add_magnitude_bound: m must be at least 1");
    return pow1p_minus_one(gamma_norm_bound(k) * static_cast<double>(m), n - k);
}

BoundReport bound_report(int n, int k, int m) {
    BoundReport r;
    r.n = n;
    r.k = k;
    r.m_additions = m;
    r.gamma_norm_bound = gamma_norm_bound(k);
    r.magnitude_bound = multi_add_magnitude_bound(n, k, m);
    r.probability_bound = r.magnitude_bound * r.magnitude_bound;
    r.probability_bound_clamped = std::min(r.probability_bound, 1.0);
    r.first_order_estimate = first_order_estimate(n, k) * static_cast<double>(m);
    r.first_order_relative_gap =
        r.magnitude_bound > 0.0 ? (r.magnitude_bound - r.first_order_estimate) / r.magnitude_bound : 0.0;
    return r;
}

}  // namespace draper
