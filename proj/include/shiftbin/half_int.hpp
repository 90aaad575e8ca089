#pragma once

#include "shiftbin/rational.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace shiftbin {

/// An exact integer or half-integer, stored doubled.
///
/// Index arithmetic over summation lattices (areas, shifted k's) stays in
/// integers this way: parity of the doubled value tells integer (even) from
/// half-integer (odd). Arithmetic is overflow-checked.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_doubled(std::int64_t doubled) { return HalfInt(doubled); }
    static HalfInt from_int(std::int64_t value) { return HalfInt(checked_mul(value, 2)); }
    /// value + 1/2
    static HalfInt half_above(std::int64_t value) { return HalfInt(checked_add(checked_mul(value, 2), 1)); }

    static HalfInt from_rational(const Rational& r)
    {
        const Rational twice = r * Rational(2);
        if (!twice.is_integer() || !twice.numerator().fits_slong_p()) {
            throw std::invalid_argument("HalfInt: " + r.str() + " is not a representable half-integer");
        }
        return HalfInt(twice.numerator().get_si());
    }

    [[nodiscard]] constexpr std::int64_t doubled() const { return doubled_; }
    [[nodiscard]] constexpr bool is_integer() const { return doubled_ % 2 == 0; }
    [[nodiscard]] constexpr bool is_half() const { return doubled_ % 2 != 0; }

    /// Integer value; throws for a genuine half-integer.
    [[nodiscard]] std::int64_t as_integer() const
    {
        if (!is_integer()) {
            throw std::domain_error("HalfInt: " + str() + " is not an integer");
        }
        return doubled_ / 2;
    }

    /// Largest integer not above the value.
    [[nodiscard]] constexpr std::int64_t floor() const
    {
        return doubled_ >= 0 ? doubled_ / 2 : -((-doubled_ + 1) / 2);
    }

    [[nodiscard]] Rational to_rational() const { return Rational(doubled_, 2); }
    [[nodiscard]] double to_double() const { return static_cast<double>(doubled_) / 2.0; }

    [[nodiscard]] std::string str() const
    {
        return is_integer() ? std::to_string(doubled_ / 2) : std::to_string(doubled_) + "/2";
    }

    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(checked_add(a.doubled_, b.doubled_)); }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(checked_add(a.doubled_, -b.doubled_)); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.doubled_); }
    friend HalfInt operator*(std::int64_t c, HalfInt a) { return HalfInt(checked_mul(c, a.doubled_)); }
    HalfInt& operator+=(HalfInt o) { return *this = *this + o; }
    HalfInt& operator-=(HalfInt o) { return *this = *this - o; }

    friend constexpr bool operator==(HalfInt, HalfInt) = default;
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
    constexpr explicit HalfInt(std::int64_t doubled) : doubled_(doubled) {}

    static std::int64_t checked_add(std::int64_t a, std::int64_t b)
    {
        std::int64_t out = 0;
        if (__builtin_add_overflow(a, b, &out)) {
            throw std::overflow_error("HalfInt: overflow");
        }
        return out;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b)
    {
        std::int64_t out = 0;
        if (__builtin_mul_overflow(a, b, &out)) {
            throw std::overflow_error("HalfInt: overflow");
        }
        return out;
    }

    std::int64_t doubled_ = 0;
};

} // namespace shiftbin
