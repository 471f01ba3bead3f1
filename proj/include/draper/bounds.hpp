#pragma once

namespace draper {

/// Closed-form error bounds for the threshold-k adder on n qubits.
struct BoundReport {
    int n = 0;
    int k = 0;
    int m_additions = 1;
    double gamma_norm_bound = 0.0;
    double magnitude_bound = 0.0;
    /// magnitude_bound squared; may exceed 1, in which case it says nothing.
    double probability_bound = 0.0;
    double probability_bound_clamped = 0.0;
    double first_order_estimate = 0.0;
    /// (magnitude - estimate) / magnitude, 0 when magnitude is 0.
    double first_order_relative_gap = 0.0;

    [[nodiscard]] bool vacuous() const noexcept { return probability_bound > 1.0; }
};

/// pi * sqrt(2) * 2^-k, the norm bound on one qubit's error vector.
double gamma_norm_bound(int k);

/// (1 + pi sqrt2 2^-k)^(n-k) - 1, requires 1 <= k <= n.
double error_magnitude_bound(int n, int k);

/// Square of error_magnitude_bound, unclamped.
double error_probability_bound(int n, int k);

/// pi (n - k) 2^-k sqrt2, the linearization of error_magnitude_bound.
double first_order_estimate(int n, int k);

/// (1 + pi sqrt2 2^-k m)^(n-k) - 1 for m chained additions.
double multi_add_magnitude_bound(int n, int k, int m);

/// All of the above for one (n, k, m) cell. For m > 1 the magnitude is the
/// multi-addition bound and the estimate is its linearization.
BoundReport bound_report(int n, int k, int m = 1);

}  // namespace draper
