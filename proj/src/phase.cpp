#include "draper/phase.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace draper {

DyadicPhase::DyadicPhase(std::uint64_t numerator, std::size_t exponent)
    : DyadicPhase(Register(64, numerator), exponent) {}

DyadicPhase::DyadicPhase(const Register& numerator, std::size_t exponent)
    : num_(numerator.resized(exponent)) {
    normalize();
}

void DyadicPhase::normalize() {
    if (num_.is_zero()) {
        num_ = Register();
        return;
    }
    const std::size_t tz = num_.count_trailing_zeros();
    if (tz != 0) num_ = num_.slice(tz, num_.width() - tz);
}

bool DyadicPhase::at_least_half() const noexcept {
    return !is_zero() && num_.bit(num_.width() - 1);
}

DyadicPhase DyadicPhase::distance_to_integer() const { return at_least_half() ? -*this : *this; }

double DyadicPhase::to_double() const noexcept {
    const std::size_t bits = num_.bit_length();
    if (bits == 0) return 0.0;
    const std::size_t lo = bits > 64 ? bits - 64 : 0;
    const auto top = static_cast<double>(num_.slice(lo, bits - lo).low_u64());
    return std::ldexp(top, static_cast<int>(lo) - static_cast<int>(num_.width()));
}

DyadicPhase DyadicPhase::operator-() const {
    DyadicPhase out;
    if (is_zero()) return out;
    out.num_ = Register(num_.width()) - num_;
    out.normalize();
    return out;
}

DyadicPhase& DyadicPhase::operator+=(const DyadicPhase& rhs) {
    const std::size_t e = std::max(exponent(), rhs.exponent());
    Register lhs_num = num_.resized(e).shifted_left(e - exponent());
    lhs_num += rhs.num_.resized(e).shifted_left(e - rhs.exponent());
    num_ = std::move(lhs_num);
    normalize();
    return *this;
}

DyadicPhase& DyadicPhase::operator-=(const DyadicPhase& rhs) { return *this += -rhs; }

std::string DyadicPhase::to_string() const {
    return num_.hex() + "/2^" + std::to_string(exponent());
}

DyadicPhase phase_add(const DyadicPhase& p, const DyadicPhase& q) { return p + q; }

DyadicPhase phase_sub(const DyadicPhase& p, const DyadicPhase& q) { return p - q; }

double phase_to_radians(const DyadicPhase& p) noexcept {
    return 2.0 * std::numbers::pi * p.to_double();
}

DyadicPhase truncation(int k, int m, const Register& a) {
    if (k < 0) throw PreconditionError("truncation: k must be nonnegative");
    if (m < 0 || static_cast<std::size_t>(m) > a.width()) {
        throw PreconditionError("truncation: m=" + std::to_string(m) + " outside [0, " +
                                std::to_string(a.width()) + "]");
    }
    const auto digits = static_cast<std::size_t>(m);
    return {a.resized(digits), digits + static_cast<std::size_t>(k)};
}

int carry_indicator(const Register& a, const Register& b, int m) {
    if (m < 0 || static_cast<std::size_t>(m) > std::min(a.width(), b.width())) {
        throw PreconditionError("carry_indicator: m=" + std::to_string(m) + " out of range");
    }
    const auto digits = static_cast<std::size_t>(m);
    Register sum = a.resized(digits).resized(digits + 1);
    sum += b.resized(digits).resized(digits + 1);
    return sum.bit(digits) ? 1 : 0;
}

std::uint64_t carry_count_multi(std::span<const Register> xs, int m) {
    if (xs.empty()) throw PreconditionError("carry_count_multi: empty summand list");
    if (m < 0) throw PreconditionError("carry_count_multi: m must be nonnegative");
    const auto digits = static_cast<std::size_t>(m);
    for (const auto& x : xs) {
        if (digits > x.width()) {
            throw PreconditionError("carry_count_multi: m=" + std::to_string(m) +
                                    " exceeds a summand width");
        }
    }
    const std::size_t headroom = std::bit_width(xs.size()) + 1;
    Register sum(digits + headroom);
    for (const auto& x : xs) sum += x.resized(digits).resized(digits + headroom);
    return sum.slice(digits, headroom).low_u64();
}

Register carry_bits(const Register& a, const Register& b) {
    // carry into position i of a + b is a_i ^ b_i ^ s_i
    return a ^ b ^ (a + b);
}

}  // namespace draper
