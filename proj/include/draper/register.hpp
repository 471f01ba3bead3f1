#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace draper {

/// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a brute-force routine is asked to exceed its configured size.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Raised for malformed operands, config files and sweep files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-width unsigned integer held as little-endian 64-bit limbs.
///
/// Bit i (0-indexed, i = 0 least significant) is the digit a_{i+1} in the
/// a_n ... a_1 positional notation. Arithmetic is modulo 2^width; bits at or
/// above width are always zero. A width-0 register exists and holds 0.
class Register {
public:
    using Limb = std::uint64_t;
    static constexpr std::size_t kLimbBits = 64;

    Register() = default;
    explicit Register(std::size_t width);
    Register(std::size_t width, std::uint64_t value);

    /// Parses decimal or 0x-prefixed hex. Fails if the value needs more than
    /// `width` bits. Decimal is accepted only for widths up to 64.
    static Register parse(std::string_view text, std::size_t width);
    static Register all_ones(std::size_t width);

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::span<const Limb> limbs() const noexcept { return limbs_; }

    [[nodiscard]] bool bit(std::size_t i) const noexcept;
    void set_bit(std::size_t i, bool value);

    [[nodiscard]] bool is_zero() const noexcept;
    /// Lowest 64 bits of the value.
    [[nodiscard]] std::uint64_t low_u64() const noexcept;
    /// Index of the highest set bit plus one; 0 for zero.
    [[nodiscard]] std::size_t bit_length() const noexcept;
    [[nodiscard]] std::size_t count_trailing_zeros() const noexcept;

    /// Bits [lo, lo + count) as a width-`count` register.
    [[nodiscard]] Register slice(std::size_t lo, std::size_t count) const;
    /// Zero-extends or truncates to a new width.
    [[nodiscard]] Register resized(std::size_t width) const;
    [[nodiscard]] Register shifted_left(std::size_t s) const;
    [[nodiscard]] Register shifted_right(std::size_t s) const;

    Register& operator+=(const Register& rhs);
    Register& operator-=(const Register& rhs);
    Register& operator^=(const Register& rhs);

    friend Register operator+(Register lhs, const Register& rhs) { return lhs += rhs; }
    friend Register operator-(Register lhs, const Register& rhs) { return lhs -= rhs; }
    friend Register operator^(Register lhs, const Register& rhs) { return lhs ^= rhs; }

    /// Value equality including width.
    friend bool operator==(const Register&, const Register&) = default;
    /// Numeric comparison; widths may differ.
    [[nodiscard]] int compare(const Register& rhs) const noexcept;

    /// Lower-case hex with 0x prefix and no leading zeros ("0x0" for zero).
    [[nodiscard]] std::string hex() const;

private:
    void require_same_width(const Register& rhs, const char* op) const;
    void clear_unused_bits() noexcept;

    std::size_t width_ = 0;
    std::vector<Limb> limbs_;
};

/// a mod 2^m as a width-m register.
Register low_bits(const Register& a, std::size_t m);

}  // namespace draper
