#include "draper/register.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace draper {

namespace {

std::size_t limb_count(std::size_t width) {
    return (width + Register::kLimbBits - 1) / Register::kLimbBits;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Register::Register(std::size_t width) : width_(width), limbs_(limb_count(width), 0) {}

Register::Register(std::size_t width, std::uint64_t value) : Register(width) {
    if (width < kLimbBits && (value >> width) != 0) {
        throw PreconditionError("value " + std::to_string(value) + " does not fit in " +
                                std::to_string(width) + " bits");
    }
    if (!limbs_.empty()) limbs_[0] = value;
}

Register Register::parse(std::string_view text, std::size_t width) {
    if (text.empty()) throw ParseError("empty operand");
    Register out(width);
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        std::string_view digits = text.substr(2);
        std::size_t pos = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            if (*it == '_') continue;
            int d = hex_digit(*it);
            if (d < 0) throw ParseError("invalid hex digit in operand '" + std::string(text) + "'");
            for (int b = 0; b < 4; ++b, ++pos) {
                if (((d >> b) & 1) == 0) continue;
                if (pos >= width) {
                    throw ParseError("operand '" + std::string(text) + "' does not fit in " +
                                     std::to_string(width) + " bits");
                }
                out.set_bit(pos, true);
            }
        }
        return out;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError("decimal operand '" + std::string(text) +
                         "' exceeds 64 bits; use 0x hex for wide operands");
    }
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("invalid operand '" + std::string(text) + "'");
    }
    if (width < kLimbBits && (value >> width) != 0) {
        throw ParseError("operand '" + std::string(text) + "' does not fit in " +
                         std::to_string(width) + " bits");
    }
    if (!out.limbs_.empty()) out.limbs_[0] = value;
    return out;
}

Register Register::all_ones(std::size_t width) {
    Register out(width);
    std::fill(out.limbs_.begin(), out.limbs_.end(), ~Limb{0});
    out.clear_unused_bits();
    return out;
}

bool Register::bit(std::size_t i) const noexcept {
    if (i >= width_) return false;
    return (limbs_[i / kLimbBits] >> (i % kLimbBits)) & 1U;
}

void Register::set_bit(std::size_t i, bool value) {
    if (i >= width_) throw PreconditionError("bit index out of range");
    const Limb mask = Limb{1} << (i % kLimbBits);
    if (value) {
        limbs_[i / kLimbBits] |= mask;
    } else {
        limbs_[i / kLimbBits] &= ~mask;
    }
}

bool Register::is_zero() const noexcept {
    return std::all_of(limbs_.begin(), limbs_.end(), [](Limb l) { return l == 0; });
}

std::uint64_t Register::low_u64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }

std::size_t Register::bit_length() const noexcept {
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != 0) {
            return i * kLimbBits + (kLimbBits - static_cast<std::size_t>(std::countl_zero(limbs_[i])));
        }
    }
    return 0;
}

std::size_t Register::count_trailing_zeros() const noexcept {
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        if (limbs_[i] != 0) {
            return i * kLimbBits + static_cast<std::size_t>(std::countr_zero(limbs_[i]));
        }
    }
    return width_;
}

Register Register::slice(std::size_t lo, std::size_t count) const {
    Register out(count);
    if (count == 0) return out;
    const std::size_t limb_shift = lo / kLimbBits;
    const std::size_t bit_shift = lo % kLimbBits;
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
        const std::size_t src = i + limb_shift;
        if (src >= limbs_.size()) break;
        Limb v = limbs_[src] >> bit_shift;
        if (bit_shift != 0 && src + 1 < limbs_.size()) {
            v |= limbs_[src + 1] << (kLimbBits - bit_shift);
        }
        out.limbs_[i] = v;
    }
    out.clear_unused_bits();
    return out;
}

Register Register::resized(std::size_t width) const {
    Register out(width);
    const std::size_t n = std::min(out.limbs_.size(), limbs_.size());
    std::copy_n(limbs_.begin(), n, out.limbs_.begin());
    out.clear_unused_bits();
    return out;
}

Register Register::shifted_left(std::size_t s) const {
    Register out(width_);
    if (s >= width_) return out;
    const std::size_t limb_shift = s / kLimbBits;
    const std::size_t bit_shift = s % kLimbBits;
    for (std::size_t i = out.limbs_.size(); i-- > limb_shift;) {
        Limb v = limbs_[i - limb_shift] << bit_shift;
        if (bit_shift != 0 && i - limb_shift >= 1) {
            v |= limbs_[i - limb_shift - 1] >> (kLimbBits - bit_shift);
        }
        out.limbs_[i] = v;
    }
    out.clear_unused_bits();
    return out;
}

Register Register::shifted_right(std::size_t s) const {
    if (s >= width_) return Register(width_);
    return slice(s, width_ - s).resized(width_);
}

void Register::require_same_width(const Register& rhs, const char* op) const {
    if (rhs.width_ != width_) {
        throw PreconditionError(std::string("register width mismatch in ") + op + ": " +
                                std::to_string(width_) + " vs " + std::to_string(rhs.width_));
    }
}

Register& Register::operator+=(const Register& rhs) {
    require_same_width(rhs, "+");
    Limb carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        const Limb s1 = limbs_[i] + rhs.limbs_[i];
        const Limb c1 = s1 < limbs_[i] ? 1 : 0;
        const Limb s2 = s1 + carry;
        const Limb c2 = s2 < s1 ? 1 : 0;
        limbs_[i] = s2;
        carry = c1 | c2;
    }
    clear_unused_bits();
    return *this;
}

Register& Register::operator-=(const Register& rhs) {
    require_same_width(rhs, "-");
    Limb borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        const Limb a = limbs_[i];
        const Limb d1 = a - rhs.limbs_[i];
        const Limb b1 = a < rhs.limbs_[i] ? 1 : 0;
        const Limb d2 = d1 - borrow;
        const Limb b2 = d1 < borrow ? 1 : 0;
        limbs_[i] = d2;
        borrow = b1 | b2;
    }
    clear_unused_bits();
    return *this;
}

Register& Register::operator^=(const Register& rhs) {
    require_same_width(rhs, "^");
    for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= rhs.limbs_[i];
    return *this;
}

int Register::compare(const Register& rhs) const noexcept {
    const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
    for (std::size_t i = n; i-- > 0;) {
        const Limb a = i < limbs_.size() ? limbs_[i] : 0;
        const Limb b = i < rhs.limbs_.size() ? rhs.limbs_[i] : 0;
        if (a != b) return a < b ? -1 : 1;
    }
    return 0;
}

std::string Register::hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t bits = bit_length();
    if (bits == 0) return "0x0";
    std::string out = "0x";
    for (std::size_t nib = (bits + 3) / 4; nib-- > 0;) {
        const std::size_t lo = nib * 4;
        unsigned d = 0;
        for (std::size_t b = 0; b < 4; ++b) d |= static_cast<unsigned>(bit(lo + b)) << b;
        out.push_back(kDigits[d]);
    }
    return out;
}

void Register::clear_unused_bits() noexcept {
    const std::size_t rem = width_ % kLimbBits;
    if (rem != 0 && !limbs_.empty()) limbs_.back() &= (Limb{1} << rem) - 1;
}

Register low_bits(const Register& a, std::size_t m) {
    if (m > a.width()) {
        throw PreconditionError("low_bits: m=" + std::to_string(m) + " exceeds width " +
                                std::to_string(a.width()));
    }
    return a.resized(m);
}

}  // namespace draper
