#pragma once

// Rational sequences converging to pi, pi^2, (pi/sin pi s)^k and friends.
//
// Every sequence here is a prefactor times a partial sum over a window that
// grows with m, so sweeps over increasing m extend a running exact sum instead
// of starting over.

#include "shiftbin/binomial.hpp"
#include "shiftbin/compositions.hpp"
#include "shiftbin/half_int.hpp"
#include "shiftbin/parallel.hpp"
#include "shiftbin/rational.hpp"
#include "shiftbin/scaled_value.hpp"
#include "shiftbin/sum_spec.hpp"
#include "shiftbin/sums.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftbin {

struct SeqRecord {
    std::int64_t m = 0;
    Rational exact;
    double approx = 0.0;
    std::string target_symbol;
    double target = 0.0;
    double abs_error = 0.0;
};

inline SeqRecord make_record(std::int64_t m, Rational exact, std::string symbol, double target)
{
    SeqRecord rec;
    rec.m = m;
    rec.approx = exact.to_double();
    rec.exact = std::move(exact);
    rec.target_symbol = std::move(symbol);
    rec.target = target;
    rec.abs_error = std::abs(rec.approx - target);
    return rec;
}

namespace detail {

/// pi to `bits` of precision by Machin's formula.
inline mpf_class machin_pi(mp_bitcnt_t bits)
{
    auto arctan_inv = [bits](unsigned long x) {
        mpf_class term(1, bits), sum(0, bits);
        term /= x;
        const mpf_class x2(x * x, bits);
        const mpf_class eps = mpf_class(1, bits) >> static_cast<mp_bitcnt_t>(bits + 8);
        for (unsigned long k = 0; abs(term) > eps; ++k) {
            const mpf_class t = term / (2 * k + 1);
            sum += (k % 2 == 0) ? t : mpf_class(-t);
            term /= x2;
        }
        return sum;
    };
    return 4 * (4 * arctan_inv(5) - arctan_inv(239));
}

} // namespace detail

/// Record for a target factor * pi^power; the error is evaluated in 256-bit
/// floating point so that it stays meaningful below double resolution.
inline SeqRecord make_pi_power_record(std::int64_t m, Rational exact, const Rational& factor, int power,
                                      std::string symbol)
{
    constexpr mp_bitcnt_t bits = 256;
    static const mpf_class pi = detail::machin_pi(bits);
    mpf_class target(factor.raw(), bits);
    for (int i = 0; i < power; ++i) {
        target *= pi;
    }
    const mpf_class diff = abs(mpf_class(exact.raw(), bits) - target);
    SeqRecord rec = make_record(m, std::move(exact), std::move(symbol), target.get_d());
    rec.abs_error = diff.get_d();
    return rec;
}

namespace detail {

/// Exact running sum of term(i) over i = lo, lo+2, ..., hi for a window
/// [lo, hi] that only ever grows.
class GrowingSum {
public:
    explicit GrowingSum(std::function<Rational(std::int64_t)> term) : term_(std::move(term)) {}

    const Rational& extend_to(std::int64_t lo, std::int64_t hi)
    {
        if (!range_) {
            for (std::int64_t i = lo; i <= hi; i += 2) {
                sum_ += term_(i);
            }
            range_ = {lo, hi};
            return sum_;
        }
        auto [cur_lo, cur_hi] = *range_;
        if (lo > cur_lo || hi < cur_hi || (cur_lo - lo) % 2 != 0 || (hi - cur_hi) % 2 != 0) {
            throw std::invalid_argument("GrowingSum: windows must grow monotonically with m");
        }
        for (std::int64_t i = lo; i < cur_lo; i += 2) {
            sum_ += term_(i);
        }
        for (std::int64_t i = cur_hi + 2; i <= hi; i += 2) {
            sum_ += term_(i);
        }
        range_ = {lo, hi};
        return sum_;
    }

private:
    std::function<Rational(std::int64_t)> term_;
    Rational sum_;
    std::optional<std::pair<std::int64_t, std::int64_t>> range_;
};

inline void require_sorted(const std::vector<std::int64_t>& ms, std::int64_t min_m)
{
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i] < min_m) {
            throw std::invalid_argument("sequence: m must be >= " + std::to_string(min_m));
        }
        if (i > 0 && ms[i] < ms[i - 1]) {
            throw std::invalid_argument("sequence: m values must be non-decreasing");
        }
    }
}

/// Doubled bounds of a half-integer window.
inline std::pair<std::int64_t, std::int64_t> half_bounds(std::int64_t m, Window window)
{
    return {window == Window::OneSided ? -2 * m + 1 : -2 * m - 1, 2 * m + 1};
}

inline Rational two_power_inverse(std::int64_t l)
{
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(l));
    return Rational(BigInt(1), p);
}

inline void require_even_l(std::int64_t l, const char* who)
{
    if (l <= 0 || l % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": l must be a positive even integer");
    }
}

inline void require_open_shift(const Shift& s, const char* who)
{
    if (s.is_zero()) {
        throw std::invalid_argument(std::string(who) + ": s must lie in (0, 1)");
    }
}

inline double pi_over_sin(const Shift& s) { return std::numbers::pi / std::sin(std::numbers::pi * s.value().to_double()); }

inline std::string pi_over_sin_symbol(const Shift& s) { return "pi/sin(pi*" + s.value().str() + ")"; }

/// sin^2(pi s) when it is rational, which happens for s in (1/12) Z only at
/// multiples of 1/6 and 1/4.
inline std::optional<Rational> rational_sin_squared(const Shift& s)
{
    const Rational twelfths = s.value() * Rational(12);
    if (!twelfths.is_integer()) {
        return std::nullopt;
    }
    switch (twelfths.numerator().get_si()) {
    case 2: case 10: return Rational(1, 4);
    case 3: case 9: return Rational(1, 2);
    case 4: case 8: return Rational(3, 4);
    case 6: return Rational(1);
    default: return std::nullopt;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Sequences from the half-integer shifted binomial theorem

/// 2^-l sum_{k half-integer in window} pi C(l, l/2 + k)  ->  pi.
inline std::vector<SeqRecord> pi_sequence_sweep(std::int64_t l, const std::vector<std::int64_t>& ms,
                                                Window window = Window::OneSided)
{
    detail::require_even_l(l, "pi_sequence");
    detail::require_sorted(ms, 1);
    const Rational scale = detail::two_power_inverse(l);
    detail::GrowingSum sum([l](std::int64_t doubled) {
        return shifted_binomial(l, HalfInt::from_int(l / 2) + HalfInt::from_doubled(doubled)).coeff();
    });
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::half_bounds(m, window);
        out.push_back(make_pi_power_record(m, scale * sum.extend_to(lo, hi), Rational(1), 1, "pi"));
    }
    return out;
}

inline SeqRecord pi_sequence(std::int64_t l, std::int64_t m, Window window = Window::OneSided)
{
    return pi_sequence_sweep(l, {m}, window).front();
}

/// ((l/2)!^2 / l!) sum_k pi C(l, l/2 + k) (-1)^(k-1/2) / k  ->  pi^2.
inline std::vector<SeqRecord> pi_squared_sequence_sweep(std::int64_t l, const std::vector<std::int64_t>& ms,
                                                        Window window = Window::OneSided)
{
    detail::require_even_l(l, "pi_squared_sequence");
    detail::require_sorted(ms, 1);
    const Rational scale = central_factor(l);
    detail::GrowingSum sum([l](std::int64_t doubled) {
        const HalfInt k = HalfInt::from_doubled(doubled);
        const Rational c = shifted_binomial(l, HalfInt::from_int(l / 2) + k).coeff();
        return sign_power((doubled - 1) / 2) * c / k.to_rational();
    });
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::half_bounds(m, window);
        out.push_back(make_pi_power_record(m, scale * sum.extend_to(lo, hi), Rational(1), 2, "pi^2"));
    }
    return out;
}

inline SeqRecord pi_squared_sequence(std::int64_t l, std::int64_t m, Window window = Window::OneSided)
{
    return pi_squared_sequence_sweep(l, {m}, window).front();
}

// ---------------------------------------------------------------------------
// General rational shift s

namespace detail {

/// Doubled window bounds of k for the general-s sequences: integer k in
/// [-m, m] for even l, half-integer k in [-m-1/2, m-1/2] for odd l.
inline std::pair<std::int64_t, std::int64_t> shifted_bounds(std::int64_t l, std::int64_t m)
{
    return l % 2 == 0 ? std::pair{-2 * m, 2 * m} : std::pair{-2 * m - 1, 2 * m - 1};
}

/// beta-stripped C(l, l/2 + k + s), k given doubled.
inline Rational shifted_coeff(std::int64_t l, std::int64_t doubled_k, const Shift& s)
{
    const std::int64_t base = (l + doubled_k) / 2; // l/2 + k, an integer
    return shifted_binomial(l, Rational(base) + s.value(), s).coeff();
}

} // namespace detail

/// 2^-l sum_k (pi/sin pi s) C(l, l/2 + k + s)  ->  pi/sin(pi s).
inline std::vector<SeqRecord> shifted_pi_sequence_sweep(std::int64_t l, const Shift& s,
                                                        const std::vector<std::int64_t>& ms)
{
    if (l < 0) {
        throw std::invalid_argument("shifted_pi_sequence: l must be >= 0");
    }
    detail::require_open_shift(s, "shifted_pi_sequence");
    detail::require_sorted(ms, 0);
    const Rational scale = detail::two_power_inverse(l);
    detail::GrowingSum sum([l, s](std::int64_t doubled) { return detail::shifted_coeff(l, doubled, s); });
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::shifted_bounds(l, m);
        out.push_back(make_record(m, scale * sum.extend_to(lo, hi), detail::pi_over_sin_symbol(s),
                                  detail::pi_over_sin(s)));
    }
    return out;
}

inline SeqRecord shifted_pi_sequence(std::int64_t l, const Shift& s, std::int64_t m)
{
    return shifted_pi_sequence_sweep(l, s, {m}).front();
}

/// ((l/2)!^2/l!) sum_{k=-m..m} (pi/sin pi s) C(l, l/2+k+s) (-1)^k/(k+s)
///     ->  (pi/sin(pi s))^2, for even l.
inline std::vector<SeqRecord> shifted_pi_squared_sequence_sweep(std::int64_t l, const Shift& s,
                                                                const std::vector<std::int64_t>& ms)
{
    if (l < 0 || l % 2 != 0) {
        throw std::invalid_argument("shifted_pi_squared_sequence: l must be even (use the odd-l sequence)");
    }
    detail::require_open_shift(s, "shifted_pi_squared_sequence");
    detail::require_sorted(ms, 0);
    const Rational scale = central_factor(l);
    detail::GrowingSum sum([l, s](std::int64_t doubled) {
        const std::int64_t k = doubled / 2;
        return sign_power(k) * detail::shifted_coeff(l, doubled, s) / (Rational(k) + s.value());
    });
    const double t = detail::pi_over_sin(s);
    const auto sin2 = detail::rational_sin_squared(s);
    const std::string symbol = "(" + detail::pi_over_sin_symbol(s) + ")^2";
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::shifted_bounds(l, m);
        Rational value = scale * sum.extend_to(lo, hi);
        out.push_back(sin2 ? make_pi_power_record(m, std::move(value), sin2->inverse(), 2, symbol)
                           : make_record(m, std::move(value), symbol, t * t));
    }
    return out;
}

inline SeqRecord shifted_pi_squared_sequence(std::int64_t l, const Shift& s, std::int64_t m)
{
    return shifted_pi_squared_sequence_sweep(l, s, {m}).front();
}

/// ((l/2)!^2/(pi l!)) sum_{k=-m-1/2..m-1/2} (pi/sin pi s) C(l, l/2+k+s)
///     (-1)^(k-1/2)/(k+s)  ->  pi/(sin(pi s) cos(pi s)), for odd l.
/// (l/2)!^2 is pi times a rational at odd l, so the prefactor is rational.
inline std::vector<SeqRecord> shifted_odd_sequence_sweep(std::int64_t l, const Shift& s,
                                                         const std::vector<std::int64_t>& ms)
{
    if (l < 1 || l % 2 == 0) {
        throw std::invalid_argument("shifted_odd_sequence: l must be odd");
    }
    detail::require_open_shift(s, "shifted_odd_sequence");
    if (s.is_half()) {
        throw std::invalid_argument("shifted_odd_sequence: cos(pi/2) = 0, target undefined at s = 1/2");
    }
    detail::require_sorted(ms, 0);
    const Rational scale = half_factorial_squared_over_pi(l) / Rational(factorial(l));
    detail::GrowingSum sum([l, s](std::int64_t doubled) {
        const Rational k(doubled, 2);
        return sign_power((doubled - 1) / 2) * detail::shifted_coeff(l, doubled, s) / (k + s.value());
    });
    const double x = std::numbers::pi * s.value().to_double();
    const double target = std::numbers::pi / (std::sin(x) * std::cos(x));
    const std::string symbol = "pi/(sin(pi*" + s.value().str() + ")*cos(pi*" + s.value().str() + "))";
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::shifted_bounds(l, m);
        out.push_back(make_record(m, scale * sum.extend_to(lo, hi), symbol, target));
    }
    return out;
}

inline SeqRecord shifted_odd_sequence(std::int64_t l, const Shift& s, std::int64_t m)
{
    return shifted_odd_sequence_sweep(l, s, {m}).front();
}

// ---------------------------------------------------------------------------
// Odd-area cumulative sums and their g-composition aggregate

namespace detail {

/// pi^2-stripped 2 sum_{A = 1, 3, ..., 2m+1} of the odd-area coefficients,
/// at every requested m.
inline std::vector<Rational> odd_area_cumulative_values(const SumSpec& spec, const std::vector<std::int64_t>& ms)
{
    require_sorted(ms, 0);
    GrowingSum sum([&spec](std::int64_t area) { return odd_area_coefficient(spec, area).stripped(2); });
    std::vector<Rational> out;
    for (auto m : ms) {
        out.push_back(Rational(2) * sum.extend_to(1, 2 * m + 1));
    }
    return out;
}

inline std::string times_symbol(const Rational& factor, const std::string& symbol)
{
    return factor == Rational(1) ? symbol : factor.str() + "*" + symbol;
}

} // namespace detail

/// 2 sum_{A odd, 1..2m+1} odd-area coefficients, times pi^2
///     ->  pi^2 C(rn, rn/2).
inline std::vector<SeqRecord> odd_area_cumulative_sweep(const SumSpec& spec, const std::vector<std::int64_t>& ms)
{
    const auto values = detail::odd_area_cumulative_values(spec, ms);
    const Rational central = spec.central_binomial();
    std::vector<SeqRecord> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        out.push_back(make_pi_power_record(ms[i], values[i], central, 2, detail::times_symbol(central, "pi^2")));
    }
    return out;
}

inline SeqRecord odd_area_cumulative(const SumSpec& spec, std::int64_t m)
{
    return odd_area_cumulative_sweep(spec, {m}).front();
}

/// Lifts a composition to a SumSpec (j >= 2). Single-part compositions get a
/// trailing zero part appended.
inline SumSpec composition_spec(const GComposition& comp, std::int64_t r)
{
    std::vector<std::int64_t> parts = comp.parts;
    if (parts.size() == 1) {
        parts.push_back(0);
    }
    return SumSpec(r, std::move(parts));
}

/// g n sum_{g-compositions} c_g * (odd-area cumulative sequence of the
/// composition)  ->  pi^2 C(rn, rn/2) C(gn, n).
inline std::vector<SeqRecord> aggregate_sequence_sweep(std::int64_t n, std::int64_t g, std::int64_t r,
                                                       const std::vector<std::int64_t>& ms, unsigned workers = 1)
{
    const auto comps = enumerate_g_compositions(n, g);
    detail::require_sorted(ms, 0);
    auto per_comp = parallel_map(comps.size(), workers, [&](std::size_t i) {
        auto values = detail::odd_area_cumulative_values(composition_spec(comps[i], r), ms);
        const Rational w = cg_weight(comps[i]);
        for (auto& v : values) {
            v *= w;
        }
        return values;
    });
    const Rational gn(g * n);
    const Rational central = newton_binomial(r * n, r * n / 2) * newton_binomial(g * n, n);
    std::vector<SeqRecord> out;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        Rational total;
        for (const auto& values : per_comp) {
            total += values[k];
        }
        out.push_back(make_pi_power_record(ms[k], gn * total, central, 2, detail::times_symbol(central, "pi^2")));
    }
    return out;
}

inline SeqRecord aggregate_sequence(std::int64_t n, std::int64_t g, std::int64_t r, std::int64_t m)
{
    return aggregate_sequence_sweep(n, g, r, {m}).front();
}

// ---------------------------------------------------------------------------
// Ratios from the single-trade forms

/// pi^2 * (centered single-trade coefficient truncated at m) / (even-area
/// coefficient)  ->  pi^2.
inline std::vector<SeqRecord> trade_ratio_pi_squared_sweep(const SumSpec& spec, std::int64_t area,
                                                           const std::vector<std::int64_t>& ms,
                                                           Window window = Window::OneSided)
{
    const Rational reference = even_area_coefficient(spec, area);
    if (reference.is_zero()) {
        throw std::invalid_argument("trade_ratio_pi_squared: even-area coefficient at A = " + std::to_string(area) +
                                    " is zero (outside support)");
    }
    detail::require_sorted(ms, 1);
    SingleTradeSeries series(spec, area, SingleTradeSeries::Kind::Centered);
    detail::GrowingSum sum([&series](std::int64_t doubled) { return series.term(HalfInt::from_doubled(doubled)); });
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::half_bounds(m, window);
        out.push_back(make_pi_power_record(m, sum.extend_to(lo, hi) / reference, Rational(1), 2, "pi^2"));
    }
    return out;
}

inline SeqRecord trade_ratio_pi_squared(const SumSpec& spec, std::int64_t area, std::int64_t m,
                                        Window window = Window::OneSided)
{
    return trade_ratio_pi_squared_sweep(spec, area, {m}, window).front();
}

/// pi^2 * ([0,1] single-trade coefficient truncated at m) / (pi * its finite
/// split form)  ->  pi.
inline std::vector<SeqRecord> trade_ratio_pi_sweep(const SumSpec& spec, std::int64_t area,
                                                   const std::vector<std::int64_t>& ms, Window window = Window::OneSided)
{
    const Rational reference = single_trade_split(spec, area).stripped(1);
    if (reference.is_zero()) {
        throw std::invalid_argument("trade_ratio_pi: split coefficient at A = " + std::to_string(area) + " is zero");
    }
    detail::require_sorted(ms, 1);
    SingleTradeSeries series(spec, area, SingleTradeSeries::Kind::Unit);
    detail::GrowingSum sum([&series](std::int64_t doubled) { return series.term(HalfInt::from_doubled(doubled)); });
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        auto [lo, hi] = detail::half_bounds(m, window);
        out.push_back(make_pi_power_record(m, sum.extend_to(lo, hi) / reference, Rational(1), 1, "pi"));
    }
    return out;
}

inline SeqRecord trade_ratio_pi(const SumSpec& spec, std::int64_t area, std::int64_t m, Window window = Window::OneSided)
{
    return trade_ratio_pi_sweep(spec, area, {m}, window).front();
}

// ---------------------------------------------------------------------------
// Generalised Chu-Vandermonde partial sums as a sequence

/// beta^-2-stripped sum_{k=-m..m} C(l1, l1p+k+s) C(l2, l2p-k-s)
///     ->  C(l1+l2, l1p+l2p) (pi/sin pi s)^2   (just the binomial at s = 0).
inline std::vector<SeqRecord> chu_vandermonde_sweep(std::int64_t l1, std::int64_t l2, std::int64_t l1p,
                                                    std::int64_t l2p, const Shift& s,
                                                    const std::vector<std::int64_t>& ms)
{
    detail::require_sorted(ms, 0);
    if (l1p < 0 || l1p > l1 || l2p < 0 || l2p > l2) {
        throw std::invalid_argument("chu_vandermonde: need 0 <= l1' <= l1 and 0 <= l2' <= l2");
    }
    const int exp = s.is_zero() ? 0 : 2;
    detail::GrowingSum sum([=](std::int64_t doubled) {
        const std::int64_t k = doubled / 2;
        const auto term = shifted_binomial(l1, Rational(l1p + k) + s.value(), s) *
                          shifted_binomial_either(l2, Rational(l2p - k) - s.value(), s);
        return term.stripped(exp);
    });
    const Rational binom = newton_binomial(l1 + l2, l1p + l2p);
    const double factor = s.is_zero() ? 1.0 : detail::pi_over_sin(s) * detail::pi_over_sin(s);
    const std::string symbol =
        s.is_zero() ? binom.str() : detail::times_symbol(binom, "(" + detail::pi_over_sin_symbol(s) + ")^2");
    const auto sin2 = s.is_zero() ? std::optional<Rational>() : detail::rational_sin_squared(s);
    std::vector<SeqRecord> out;
    for (auto m : ms) {
        const Rational& value = sum.extend_to(-2 * m, 2 * m);
        out.push_back(sin2 ? make_pi_power_record(m, value, binom / *sin2, 2, symbol)
                           : make_record(m, value, symbol, binom.to_double() * factor));
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Optional post-process: mean of consecutive partial sums. Damps the
/// oscillation of alternating tails. Not part of any sequence's definition;
/// record m carries the average of rows m and m+1 of the input.
inline std::vector<SeqRecord> average_consecutive(const std::vector<SeqRecord>& records)
{
    std::vector<SeqRecord> out;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        Rational mean = (records[i].exact + records[i + 1].exact) / Rational(2);
        out.push_back(make_record(records[i].m, std::move(mean), records[i].target_symbol + " [averaged]",
                                  records[i].target));
    }
    return out;
}

} // namespace shiftbin
