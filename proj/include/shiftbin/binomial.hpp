#pragma once

// Exact binomials at integer, half-integer and rational-shifted entries.
//
// For a shifted entry x = k + s (k integer, 0 < s < 1)
//
//     C(l, x) = l! / (Gamma(x+1) Gamma(l-x+1))
//
// is a rational multiple of beta(s) = sin(pi s)/pi. Nothing transcendental is
// ever evaluated: the Gamma factors are reduced to finite Pochhammer products
// and the reflection Gamma(z)Gamma(1-z) = pi/sin(pi z) leaves exactly one
// symbolic beta(s).

#include "shiftbin/half_int.hpp"
#include "shiftbin/rational.hpp"
#include "shiftbin/scaled_value.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace shiftbin {

/// n!, memoized in a process-wide table that only grows. References stay
/// valid for the lifetime of the process.
inline const BigInt& factorial(std::int64_t n)
{
    if (n < 0) {
        throw std::domain_error("factorial of negative number " + std::to_string(n));
    }
    static std::deque<BigInt> table{BigInt(1)};
    static std::shared_mutex mutex;
    const auto index = static_cast<std::size_t>(n);
    {
        std::shared_lock lock(mutex);
        if (index < table.size()) {
            return table[index];
        }
    }
    std::unique_lock lock(mutex);
    while (table.size() <= index) {
        BigInt next = table.back() * static_cast<unsigned long>(table.size());
        table.push_back(std::move(next));
    }
    return table[index];
}

/// C(l, entry) for integer entry; zero outside [0, l].
inline Rational newton_binomial(std::int64_t l, std::int64_t entry)
{
    if (l < 0) {
        throw std::invalid_argument("newton_binomial: negative l");
    }
    if (entry < 0 || entry > l) {
        return Rational(0);
    }
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(entry));
    return Rational(out);
}

namespace detail {

/// Splits x = k + s for the given shift; throws if x - s is not an integer.
inline std::int64_t integer_offset(const Rational& x, const Shift& shift)
{
    const Rational k = x - shift.value();
    if (!k.is_integer() || !k.numerator().fits_slong_p()) {
        throw std::invalid_argument("shifted entry " + x.str() + " is not an integer plus s = " + shift.value().str());
    }
    return k.numerator().get_si();
}

} // namespace detail

/// C(l, x) for x = k + s, as a ScaledValue.
///
/// s = 0 gives the classical binomial with scale_exp 0. Otherwise the result
/// is coeff * beta(s) with
///
///     coeff = (-1)^(k+1) l! / prod_{i=0..l} (i - x)
///
/// which follows from Gamma(l-x+1) = (-x)_{l+1} Gamma(-x) together with the
/// reflection Gamma(x+1)Gamma(-x) = (-1)^(k+1) / beta(s).
inline ScaledValue shifted_binomial(std::int64_t l, const Rational& entry, const Shift& shift)
{
    if (l < 0) {
        throw std::invalid_argument("shifted_binomial: negative l");
    }
    const std::int64_t k = detail::integer_offset(entry, shift);
    if (shift.is_zero()) {
        return ScaledValue::rational(newton_binomial(l, k));
    }
    // prod (i - x) = prod (i*den - num) / den^(l+1)
    const BigInt& num = entry.numerator();
    const BigInt& den = entry.denominator();
    BigInt product = 1;
    for (std::int64_t i = 0; i <= l; ++i) {
        product *= BigInt(static_cast<long>(i)) * den - num;
    }
    BigInt den_power;
    mpz_pow_ui(den_power.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(l + 1));
    Rational coeff(factorial(l) * den_power, product);
    if (k % 2 == 0) {
        coeff = -coeff;
    }
    return {std::move(coeff), 1, shift};
}

/// Integer or half-integer entry: s = 0 or s = 1/2 chosen by parity.
inline ScaledValue shifted_binomial(std::int64_t l, HalfInt entry)
{
    if (entry.is_integer()) {
        return ScaledValue::rational(newton_binomial(l, entry.as_integer()));
    }
    return shifted_binomial(l, entry.to_rational(), Shift::half());
}

/// C(l, x) for x congruent to +s or -s modulo 1, tagged with `shift`.
/// beta(1-s) = beta(s), so an entry on the mirrored lattice carries the same
/// transcendental factor.
inline ScaledValue shifted_binomial_either(std::int64_t l, const Rational& entry, const Shift& shift)
{
    if (shift.is_zero() || (entry - shift.value()).is_integer()) {
        return shifted_binomial(l, entry, shift);
    }
    const Shift mirrored(Rational(1) - shift.value());
    auto value = shifted_binomial(l, entry, mirrored);
    return {value.coeff(), value.scale_exp(), shift};
}

/// pi * C(l, h) for half-integer h from the closed product
///
///     pi C(l, h) = (-1)^(h+1/2) l! prod_{k=h..l+h} 1/(l-k)
///
/// Kept as an independent route to the half-integer binomial.
inline Rational pi_times_half_binomial_check(std::int64_t l, HalfInt entry)
{
    if (!entry.is_half()) {
        throw std::invalid_argument("pi_times_half_binomial_check: entry " + entry.str() + " is an integer");
    }
    Rational out(factorial(l));
    const HalfInt top = HalfInt::from_int(l);
    for (HalfInt k = entry; k <= entry + HalfInt::from_int(l); k += HalfInt::from_int(1)) {
        out /= (top - k).to_rational();
    }
    const std::int64_t sign_exp = (entry.doubled() + 1) / 2;
    return sign_power(sign_exp) * out;
}

namespace detail {

/// Pochhammer prefixes anchored at a fixed rational a:
/// rising[n] = a (a+1) ... (a+n-1), falling[n] = (a-1)(a-2) ... (a-n).
struct PochhammerPrefixes {
    Rational anchor;
    std::vector<Rational> rising{Rational(1)};
    std::vector<Rational> falling{Rational(1)};

    const Rational& rise(std::size_t n)
    {
        while (rising.size() <= n) {
            rising.push_back(rising.back() * (anchor + Rational(static_cast<std::int64_t>(rising.size()) - 1)));
        }
        return rising[n];
    }
    const Rational& fall(std::size_t n)
    {
        while (falling.size() <= n) {
            falling.push_back(falling.back() * (anchor - Rational(static_cast<std::int64_t>(falling.size()))));
        }
        return falling[n];
    }
};

inline PochhammerPrefixes& prefixes_for(const Rational& anchor)
{
    thread_local std::map<std::string, PochhammerPrefixes> cache;
    auto [it, inserted] = cache.try_emplace(anchor.str());
    if (inserted) {
        it->second.anchor = anchor;
    }
    return it->second;
}

/// Gamma(a) / Gamma(a + n); zero when Gamma(a + n) sits on a pole.
inline Rational gamma_ratio_recip(const Rational& anchor, std::int64_t n)
{
    auto& pre = prefixes_for(anchor);
    if (n >= 0) {
        return pre.rise(static_cast<std::size_t>(n)).inverse();
    }
    // Gamma(a)/Gamma(a-m) = (a-1)(a-2)...(a-m); a zero factor is a pole of
    // Gamma(a-m), i.e. a zero of the reciprocal.
    return pre.fall(static_cast<std::size_t>(-n));
}

} // namespace detail

/// C(l, k + s) by the anchored Gamma ladder.
///
/// Gamma(k+s+1) and Gamma(l-k-s+1) are walked from Gamma(1+s) and Gamma(1-s)
/// through memoized Pochhammer prefixes; Gamma(1+s)Gamma(1-s) = s / beta(s)
/// supplies the single symbolic beta. A ladder step that would divide by zero
/// (a pole at a non-positive integer) yields the exact value 0. Slower than
/// shifted_binomial for large |k|; used as an independent cross-check.
inline ScaledValue shifted_binomial_ladder(std::int64_t l, const Rational& entry, const Shift& shift)
{
    if (l < 0) {
        throw std::invalid_argument("shifted_binomial_ladder: negative l");
    }
    const std::int64_t k = detail::integer_offset(entry, shift);
    const Rational a = Rational(1) + shift.value();
    const Rational b = Rational(1) - shift.value();
    Rational coeff = Rational(factorial(l)) * detail::gamma_ratio_recip(a, k) * detail::gamma_ratio_recip(b, l - k);
    if (shift.is_zero()) {
        return ScaledValue::rational(std::move(coeff));
    }
    coeff /= shift.value();
    return {std::move(coeff), 1, shift};
}

/// sin(pi x)/(pi x) for x = k + s.
///
/// 1 at x = 0, 0 at other integers, otherwise (-1)^k / x * beta(s).
inline ScaledValue sinc_at(const Rational& x, const Shift& shift)
{
    if (x.is_zero()) {
        return ScaledValue::rational(Rational(1));
    }
    if (x.is_integer()) {
        return ScaledValue::rational(Rational(0));
    }
    if (shift.is_zero()) {
        throw std::invalid_argument("sinc_at: non-integer " + x.str() + " with zero shift");
    }
    const std::int64_t k = detail::integer_offset(x, shift);
    return {sign_power(k) / x, 1, shift};
}

inline ScaledValue sinc_at(HalfInt x)
{
    return x.is_integer() ? sinc_at(x.to_rational(), Shift::zero()) : sinc_at(x.to_rational(), Shift::half());
}

/// (l/2)!^2 / l! for even l.
inline Rational central_factor(std::int64_t l)
{
    if (l < 0 || l % 2 != 0) {
        throw std::invalid_argument("central_factor: l must be even and non-negative");
    }
    const BigInt& h = factorial(l / 2);
    return Rational(h * h, factorial(l));
}

/// Gamma(l/2 + 1)^2 / pi for odd l (a rational, since Gamma(n + 1/2) is a
/// rational multiple of sqrt(pi)).
inline Rational half_factorial_squared_over_pi(std::int64_t l)
{
    if (l < 1 || l % 2 == 0) {
        throw std::invalid_argument("half_factorial_squared_over_pi: l must be odd and positive");
    }
    // Gamma(m + 1/2) / sqrt(pi) = (2m)! / (4^m m!), here m = (l+1)/2.
    const std::int64_t m = (l + 1) / 2;
    BigInt four_m;
    mpz_ui_pow_ui(four_m.get_mpz_t(), 4, static_cast<unsigned long>(m));
    const Rational g(factorial(2 * m), four_m * factorial(m));
    return g * g;
}

/// Per-evaluation cache of C(l, h) coefficients at integer/half-integer h.
/// Not shared between threads; each evaluator owns one.
class BinomialCache {
public:
    /// Coefficient of C(l, h): the integer binomial for integer h, pi*C(l,h)
    /// for half-integer h.
    const Rational& coeff(std::int64_t l, HalfInt entry)
    {
        auto& row = rows_[l];
        auto it = row.find(entry.doubled());
        if (it == row.end()) {
            it = row.emplace(entry.doubled(), shifted_binomial(l, entry).coeff()).first;
        }
        return it->second;
    }

private:
    std::unordered_map<std::int64_t, std::unordered_map<std::int64_t, Rational>> rows_;
};

} // namespace shiftbin
