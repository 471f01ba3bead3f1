#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "draper/register.hpp"

namespace draper {

/// Exact phase numerator / 2^exponent, reduced mod 1.
///
/// Stored in lowest terms: the numerator is odd, or the phase is zero with
/// exponent 0. Structural equality is therefore value equality.
class DyadicPhase {
public:
    DyadicPhase() = default;
    /// numerator / 2^exponent mod 1.
    DyadicPhase(std::uint64_t numerator, std::size_t exponent);
    /// numerator / 2^exponent mod 1; bits of `numerator` at or above
    /// `exponent` are integer turns and are discarded.
    DyadicPhase(const Register& numerator, std::size_t exponent);

    /// 2^-exponent.
    static DyadicPhase unit(std::size_t exponent) { return {1, exponent}; }

    [[nodiscard]] const Register& numerator() const noexcept { return num_; }
    [[nodiscard]] std::size_t exponent() const noexcept { return num_.width(); }
    [[nodiscard]] bool is_zero() const noexcept { return num_.width() == 0; }
    /// True when the value lies in [1/2, 1).
    [[nodiscard]] bool at_least_half() const noexcept;

    /// min(t, 1 - t), the distance to the nearest integer, in [0, 1/2].
    [[nodiscard]] DyadicPhase distance_to_integer() const;

    /// Value in [0, 1), accurate to about one ulp for any exponent.
    [[nodiscard]] double to_double() const noexcept;

    DyadicPhase operator-() const;
    DyadicPhase& operator+=(const DyadicPhase& rhs);
    DyadicPhase& operator-=(const DyadicPhase& rhs);
    friend DyadicPhase operator+(DyadicPhase lhs, const DyadicPhase& rhs) { return lhs += rhs; }
    friend DyadicPhase operator-(DyadicPhase lhs, const DyadicPhase& rhs) { return lhs -= rhs; }
    friend bool operator==(const DyadicPhase&, const DyadicPhase&) = default;

    /// "num/2^e" with num in hex, e.g. "0x5/2^5".
    [[nodiscard]] std::string to_string() const;

private:
    void normalize();

    Register num_;  // width == exponent
};

DyadicPhase phase_add(const DyadicPhase& p, const DyadicPhase& q);
DyadicPhase phase_sub(const DyadicPhase& p, const DyadicPhase& q);

/// 2*pi*p in radians, scaled by powers of two rather than by materializing
/// 2^exponent, so exponents far beyond 53 stay accurate.
double phase_to_radians(const DyadicPhase& p) noexcept;

/// Tr(k; m; a) = (a mod 2^m) / 2^(m + k), i.e. 0.(k zeros)a_m...a_1.
/// m = 0 gives 0.
DyadicPhase truncation(int k, int m, const Register& a);

/// 1 iff (a mod 2^m) + (b mod 2^m) >= 2^m. For every k >= 0 this is the exact
/// value of (Tr(k;m;a) + Tr(k;m;b) - Tr(k;m;a+b)) * 2^k.
int carry_indicator(const Register& a, const Register& b, int m);

/// floor(sum_j (x_j mod 2^m) / 2^m): the number of 2^-k units by which the
/// sum of truncations exceeds the truncation of the sum.
std::uint64_t carry_count_multi(std::span<const Register> xs, int m);

/// Bit m of the result equals carry_indicator(a, b, m) for 1 <= m < width;
/// bit 0 is always clear. Widths must match.
Register carry_bits(const Register& a, const Register& b);

}  // namespace draper
