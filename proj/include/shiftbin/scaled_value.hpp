#pragma once

#include "shiftbin/rational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shiftbin {

/// Rational shift s in [0, 1) applied to binomial entries.
class Shift {
public:
    Shift() = default;

    explicit Shift(Rational s) : s_(std::move(s))
    {
        if (s_ < Rational(0) || s_ >= Rational(1)) {
            throw std::invalid_argument("Shift: s = " + s_.str() + " outside [0, 1)");
        }
    }

    static Shift zero() { return Shift(); }
    static Shift half() { return Shift(Rational(1, 2)); }
    static Shift parse(std::string_view text) { return Shift(Rational::parse(text)); }

    [[nodiscard]] const Rational& value() const { return s_; }
    [[nodiscard]] bool is_zero() const { return s_.is_zero(); }
    [[nodiscard]] bool is_half() const { return s_ == Rational(1, 2); }

    /// beta(s) = sin(pi s)/pi as a double (1/pi at s = 1/2).
    [[nodiscard]] double beta() const
    {
        if (is_half()) {
            return std::numbers::inv_pi;
        }
        return std::sin(std::numbers::pi * s_.to_double()) / std::numbers::pi;
    }

    friend bool operator==(const Shift&, const Shift&) = default;

private:
    Rational s_;
};

/// coeff * beta(s)^scale_exp, with beta(s) = sin(pi s)/pi kept symbolic.
///
/// For s = 1/2 this is coeff / pi^scale_exp. A value with scale_exp 0 is a
/// plain rational; its shift is normalised to zero so that rationals compare
/// and combine regardless of where they came from.
class ScaledValue {
public:
    ScaledValue() = default;

    ScaledValue(Rational coeff, int scale_exp, Shift shift)
        : coeff_(std::move(coeff)), scale_exp_(scale_exp), shift_(scale_exp == 0 ? Shift::zero() : std::move(shift))
    {
        if (scale_exp < 0) {
            throw std::invalid_argument("ScaledValue: negative scale exponent");
        }
        if (scale_exp > 0 && shift_.is_zero()) {
            throw std::invalid_argument("ScaledValue: beta(0) = 0 cannot carry a scale exponent");
        }
    }

    static ScaledValue rational(Rational coeff) { return {std::move(coeff), 0, Shift::zero()}; }
    static ScaledValue zero(int scale_exp, const Shift& shift) { return {Rational(0), scale_exp, shift}; }

    [[nodiscard]] const Rational& coeff() const { return coeff_; }
    [[nodiscard]] int scale_exp() const { return scale_exp_; }
    [[nodiscard]] const Shift& shift() const { return shift_; }
    [[nodiscard]] bool is_rational() const { return scale_exp_ == 0; }

    /// Returns the coefficient after checking the expected scale exponent.
    [[nodiscard]] const Rational& stripped(int expected_exp) const
    {
        if (scale_exp_ != expected_exp) {
            throw std::logic_error("ScaledValue: expected beta^" + std::to_string(expected_exp) + ", have beta^" +
                                   std::to_string(scale_exp_));
        }
        return coeff_;
    }

    [[nodiscard]] double to_double() const
    {
        return coeff_.to_double() * std::pow(shift_.beta(), scale_exp_);
    }

    [[nodiscard]] std::string str() const
    {
        if (scale_exp_ == 0) {
            return coeff_.str();
        }
        const std::string scale = shift_.is_half() ? "pi^-" + std::to_string(scale_exp_)
                                                   : "beta(" + shift_.value().str() + ")^" + std::to_string(scale_exp_);
        return "(" + coeff_.str() + ")*" + scale;
    }

    ScaledValue& operator+=(const ScaledValue& o)
    {
        require_same_scale(o);
        coeff_ += o.coeff_;
        return *this;
    }
    ScaledValue& operator-=(const ScaledValue& o)
    {
        require_same_scale(o);
        coeff_ -= o.coeff_;
        return *this;
    }
    ScaledValue& operator*=(const ScaledValue& o)
    {
        if (scale_exp_ > 0 && o.scale_exp_ > 0 && !(shift_ == o.shift_)) {
            throw std::domain_error("ScaledValue: product of values with different shifts");
        }
        if (scale_exp_ == 0) {
            shift_ = o.shift_;
        }
        coeff_ *= o.coeff_;
        scale_exp_ += o.scale_exp_;
        return *this;
    }
    ScaledValue& operator*=(const Rational& r)
    {
        coeff_ *= r;
        return *this;
    }

    friend ScaledValue operator+(ScaledValue a, const ScaledValue& b) { return a += b; }
    friend ScaledValue operator-(ScaledValue a, const ScaledValue& b) { return a -= b; }
    friend ScaledValue operator*(ScaledValue a, const ScaledValue& b) { return a *= b; }
    friend ScaledValue operator*(ScaledValue a, const Rational& b) { return a *= b; }
    friend ScaledValue operator-(ScaledValue a)
    {
        a.coeff_ = -a.coeff_;
        return a;
    }

    friend bool operator==(const ScaledValue&, const ScaledValue&) = default;

private:
    void require_same_scale(const ScaledValue& o) const
    {
        if (scale_exp_ != o.scale_exp_ || !(shift_ == o.shift_)) {
            throw std::domain_error("ScaledValue: cannot add " + str() + " and " + o.str());
        }
    }

    Rational coeff_;
    int scale_exp_ = 0;
    Shift shift_;
};

} // namespace shiftbin
