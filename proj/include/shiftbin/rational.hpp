#pragma once

// Reduced big rationals. Thin value wrapper over GMP's mpq_class that keeps
// the canonical form (gcd 1, positive denominator) as a class invariant.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace shiftbin {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;

    template <std::integral T>
    Rational(T value) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<T>) {
            mpz_set_si(value_.get_num_mpz_t(), static_cast<long>(value));
        } else {
            mpz_set_ui(value_.get_num_mpz_t(), static_cast<unsigned long>(value));
        }
    }

    Rational(const BigInt& num) : value_(num) {} // NOLINT(google-explicit-constructor)

    Rational(const BigInt& num, const BigInt& den)
    {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        value_.get_num() = num;
        value_.get_den() = den;
        value_.canonicalize();
    }

    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

    explicit Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

    /// Parses "n", "-n" or "n/d" (decimal, arbitrary length).
    static Rational parse(std::string_view text)
    {
        const auto slash = text.find('/');
        auto parse_int = [](std::string_view s) {
            if (s.empty()) {
                throw std::invalid_argument("Rational::parse: empty integer");
            }
            std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
            if (start == s.size()) {
                throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
            }
            for (std::size_t i = start; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') {
                    throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
                }
            }
            std::string digits(s.front() == '+' ? s.substr(1) : s);
            return BigInt(digits, 10);
        };
        if (slash == std::string_view::npos) {
            return Rational(parse_int(text));
        }
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    [[nodiscard]] const BigInt& numerator() const { return value_.get_num(); }
    [[nodiscard]] const BigInt& denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    // mpq_get_d truncates; relative error is below one ulp, which is all the
    // float column ever needs.
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    [[nodiscard]] std::string str() const
    {
        if (is_integer()) {
            return value_.get_num().get_str();
        }
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    [[nodiscard]] Rational inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("Rational: inverse of zero");
        }
        mpq_class out;
        mpq_inv(out.get_mpq_t(), value_.get_mpq_t());
        return Rational(std::move(out));
    }

    [[nodiscard]] Rational abs() const { return Rational(mpq_class(::abs(value_))); }

    [[nodiscard]] Rational pow(unsigned exponent) const
    {
        mpq_class out;
        mpz_pow_ui(out.get_num_mpz_t(), value_.get_num_mpz_t(), exponent);
        mpz_pow_ui(out.get_den_mpz_t(), value_.get_den_mpz_t(), exponent);
        return Rational(std::move(out));
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) {
            throw std::domain_error("Rational: division by zero");
        }
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_;
};

inline Rational sign_power(std::int64_t exponent)
{
    return (exponent % 2 == 0) ? Rational(1) : Rational(-1);
}

} // namespace shiftbin
