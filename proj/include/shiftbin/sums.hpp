#pragma once

// Multiple binomial sums indexed by the area variable A.
//
// All families share the same skeleton. With n_i = r l_i, k_3..k_j range over
// a lattice and the two eliminated summation variables enter through
//
//     s2 = sum_{i>=3} (i-2) k_i,    s1 = sum_{i>=3} (i-1) k_i,
//     first entry  = n_1/2 + A/2 + s2,
//     second entry = n_2/2 - A/2 - s1.
//
// Families differ in the parity of A, in which k's are half-integers, and in
// an optional extra k_1 sum carrying a sinc-type factor of
// d = A/2 - k_1 + s2. Each family has a fixed power of beta = 1/pi, so the
// evaluators accumulate plain rationals and attach the exponent at the end.

#include "shiftbin/binomial.hpp"
#include "shiftbin/half_int.hpp"
#include "shiftbin/parallel.hpp"
#include "shiftbin/rational.hpp"
#include "shiftbin/scaled_value.hpp"
#include "shiftbin/sum_spec.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shiftbin {

namespace detail {

/// One point of the k_3..k_j lattice with its running linear forms and the
/// product of its binomial coefficients.
struct LatticePoint {
    HalfInt s2;
    HalfInt s1;
    Rational weight;
};

/// Summation axis for k_position (position >= 3).
struct Axis {
    std::int64_t position;
    std::vector<std::pair<HalfInt, Rational>> values;
};

inline Axis integer_axis(std::int64_t position, std::int64_t power)
{
    Axis axis{position, {}};
    for (std::int64_t k = -power / 2; k <= power / 2; ++k) {
        axis.values.emplace_back(HalfInt::from_int(k), newton_binomial(power, power / 2 + k));
    }
    return axis;
}

/// Half-integer axis over a window; coefficients are pi * C(power, power/2 + k).
inline Axis half_axis(std::int64_t position, std::int64_t power, std::int64_t m, Window window)
{
    Axis axis{position, {}};
    for (HalfInt k : half_window(m, window)) {
        axis.values.emplace_back(k, shifted_binomial(power, HalfInt::from_int(power / 2) + k).coeff());
    }
    return axis;
}

/// Walks the lattice in row-major order. Prefix sums and products are kept per
/// level, so advancing the last axis costs one multiply and two adds.
inline std::vector<LatticePoint> build_lattice(const std::vector<Axis>& axes)
{
    std::vector<LatticePoint> out;
    const std::size_t depth = axes.size();
    for (const auto& axis : axes) {
        if (axis.values.empty()) {
            return out;
        }
    }
    std::vector<std::size_t> digit(depth, 0);
    std::vector<LatticePoint> prefix(depth + 1, LatticePoint{HalfInt(), HalfInt(), Rational(1)});

    auto refresh_from = [&](std::size_t level) {
        for (std::size_t a = level; a < depth; ++a) {
            const auto& [k, c] = axes[a].values[digit[a]];
            prefix[a + 1].s2 = prefix[a].s2 + (axes[a].position - 2) * k;
            prefix[a + 1].s1 = prefix[a].s1 + (axes[a].position - 1) * k;
            prefix[a + 1].weight = prefix[a].weight * c;
        }
    };
    refresh_from(0);
    while (true) {
        out.push_back(prefix[depth]);
        std::size_t a = depth;
        while (a > 0 && digit[a - 1] + 1 == axes[a - 1].values.size()) {
            --a;
        }
        if (a == 0) {
            break;
        }
        ++digit[a - 1];
        for (std::size_t b = a; b < depth; ++b) {
            digit[b] = 0;
        }
        refresh_from(a - 1);
    }
    return out;
}

inline std::vector<Axis> integer_axes(const SumSpec& spec, std::size_t first_position)
{
    std::vector<Axis> axes;
    for (std::size_t i = first_position; i <= spec.j(); ++i) {
        axes.push_back(integer_axis(static_cast<std::int64_t>(i), spec.power(i)));
    }
    return axes;
}

inline void require_parity(std::int64_t area, bool want_even, const char* who)
{
    const bool is_even = area % 2 == 0;
    if (is_even != want_even) {
        throw std::invalid_argument(std::string(who) + ": area A = " + std::to_string(area) + " must be " +
                                    (want_even ? "even" : "odd"));
    }
}

/// Sum over the lattice of C(n1, first) C(n2, second) weight.
inline Rational eliminated_pair_sum(const SumSpec& spec, std::int64_t area, const std::vector<LatticePoint>& lattice,
                                    BinomialCache& cache)
{
    const std::int64_t n1 = spec.power(1);
    const std::int64_t n2 = spec.power(2);
    const HalfInt half_area = HalfInt::from_doubled(area);
    const HalfInt c1 = HalfInt::from_int(n1 / 2) + half_area;
    const HalfInt c2 = HalfInt::from_int(n2 / 2) - half_area;
    Rational total;
    for (const auto& point : lattice) {
        const HalfInt e1 = c1 + point.s2;
        const HalfInt e2 = c2 - point.s1;
        if (e1.is_integer() && (e1 < HalfInt() || e1 > HalfInt::from_int(n1))) {
            continue;
        }
        if (e2.is_integer() && (e2 < HalfInt() || e2 > HalfInt::from_int(n2))) {
            continue;
        }
        total += cache.coeff(n1, e1) * cache.coeff(n2, e2) * point.weight;
    }
    return total;
}

} // namespace detail

/// Integer coefficient of exp(i pi A p/q) for even A: the finite sum over
/// k_3..k_j of the product of j integer-entry binomials. Zero off support.
inline Rational even_area_coefficient(const SumSpec& spec, std::int64_t area)
{
    detail::require_parity(area, true, "even_area_coefficient");
    BinomialCache cache;
    return detail::eliminated_pair_sum(spec, area, detail::build_lattice(detail::integer_axes(spec, 3)), cache);
}

/// Even areas with a nonzero coefficient, ascending. Found by scanning, for
/// each lattice point, the A/2 range that keeps both eliminated entries inside
/// [0, n_1] and [0, n_2]; every term is non-negative so feasibility is exact.
inline std::vector<std::int64_t> even_area_support(const SumSpec& spec)
{
    const std::int64_t n1 = spec.power(1);
    const std::int64_t n2 = spec.power(2);
    std::set<std::int64_t> halves;
    for (const auto& point : detail::build_lattice(detail::integer_axes(spec, 3))) {
        const std::int64_t s2 = point.s2.as_integer();
        const std::int64_t s1 = point.s1.as_integer();
        const std::int64_t lo = std::max(-n1 / 2 - s2, -n2 / 2 - s1);
        const std::int64_t hi = std::min(n1 / 2 - s2, n2 / 2 - s1);
        for (std::int64_t h = lo; h <= hi; ++h) {
            halves.insert(h);
        }
    }
    std::vector<std::int64_t> out;
    for (auto h : halves) {
        out.push_back(2 * h);
    }
    return out;
}

/// Symmetric bracket [-(g-1) r floor(n^2/4), +...] for the even-area support,
/// read with g = j.
inline std::int64_t support_bracket(const SumSpec& spec)
{
    const std::int64_t n = spec.n();
    return static_cast<std::int64_t>(spec.j() - 1) * spec.r() * ((n * n) / 4);
}

/// Sum of all even-area coefficients; equals C(rn, rn/2).
inline Rational sum_rule_even(const SumSpec& spec)
{
    BinomialCache cache;
    const auto lattice = detail::build_lattice(detail::integer_axes(spec, 3));
    Rational total;
    for (auto area : even_area_support(spec)) {
        total += detail::eliminated_pair_sum(spec, area, lattice, cache);
    }
    return total;
}

/// Odd-area coefficient with both eliminated entries at half-integers:
/// rational / pi^2.
inline ScaledValue odd_area_coefficient(const SumSpec& spec, std::int64_t area)
{
    detail::require_parity(area, false, "odd_area_coefficient");
    BinomialCache cache;
    return {detail::eliminated_pair_sum(spec, area, detail::build_lattice(detail::integer_axes(spec, 3)), cache), 2,
            Shift::half()};
}

/// Same coefficient from the form with the first cosine re-expanded: an
/// integer k_1 sum with a half-integer sinc factor at d = A/2 - k_1 + s2.
inline ScaledValue odd_area_coefficient_sinc(const SumSpec& spec, std::int64_t area)
{
    detail::require_parity(area, false, "odd_area_coefficient_sinc");
    const std::int64_t n1 = spec.power(1);
    const std::int64_t n2 = spec.power(2);
    const HalfInt half_area = HalfInt::from_doubled(area);
    const auto lattice = detail::build_lattice(detail::integer_axes(spec, 3));
    BinomialCache cache;
    Rational total;
    for (std::int64_t k1 = -n1 / 2; k1 <= n1 / 2; ++k1) {
        const Rational& c1 = cache.coeff(n1, HalfInt::from_int(n1 / 2 + k1));
        for (const auto& point : lattice) {
            const HalfInt d = half_area - HalfInt::from_int(k1) + point.s2;
            const HalfInt e2 = HalfInt::from_int(n2 / 2) - half_area - point.s1;
            // pi * sinc(d) = (-1)^(d - 1/2) / d at half-integer d
            const Rational sinc = sign_power((d.doubled() - 1) / 2) / d.to_rational();
            total += sinc * c1 * cache.coeff(n2, e2) * point.weight;
        }
    }
    return {std::move(total), 2, Shift::half()};
}

/// Term-by-term series in k_1 for the forms where only the first cosine is
/// traded for its half-integer-shifted binomial sum (A even, k_1 half-integer).
///
/// Centered: integration over [-1/2, 1/2]; factor sinc(d). Converges to the
///           even-area coefficient.
/// Unit:     integration over [0, 1]; factor 1/(pi d), the real coefficient of
///           -i exp(i pi A p/q). Antisymmetric in A.
class SingleTradeSeries {
public:
    enum class Kind { Centered, Unit };

    SingleTradeSeries(const SumSpec& spec, std::int64_t area, Kind kind)
        : spec_(spec), area_(area), kind_(kind), lattice_(detail::build_lattice(detail::integer_axes(spec, 3)))
    {
        detail::require_parity(area, true, "SingleTradeSeries");
    }

    /// beta^2-stripped contribution of one half-integer k_1.
    [[nodiscard]] Rational term(HalfInt k1)
    {
        if (!k1.is_half()) {
            throw std::invalid_argument("SingleTradeSeries: k_1 must be a half-integer");
        }
        const std::int64_t n1 = spec_.power(1);
        const std::int64_t n2 = spec_.power(2);
        const HalfInt half_area = HalfInt::from_doubled(area_);
        const Rational& c1 = cache_.coeff(n1, HalfInt::from_int(n1 / 2) + k1);
        Rational total;
        for (const auto& point : lattice_) {
            const HalfInt e2 = HalfInt::from_int(n2 / 2) - half_area - point.s1;
            if (e2 < HalfInt() || e2 > HalfInt::from_int(n2)) {
                continue;
            }
            const HalfInt d = half_area - k1 + point.s2;
            Rational factor = d.to_rational().inverse();
            if (kind_ == Kind::Centered) {
                factor *= sign_power((d.doubled() - 1) / 2);
            }
            total += factor * c1 * cache_.coeff(n2, e2) * point.weight;
        }
        return total;
    }

    [[nodiscard]] ScaledValue sum(std::int64_t m, Window window)
    {
        Rational total;
        for (HalfInt k1 : half_window(m, window)) {
            total += term(k1);
        }
        return {std::move(total), 2, Shift::half()};
    }

private:
    SumSpec spec_;
    std::int64_t area_;
    Kind kind_;
    std::vector<detail::LatticePoint> lattice_;
    BinomialCache cache_;
};

/// First cosine traded, range [-1/2, 1/2]; k_1 truncated to the window.
inline ScaledValue single_trade_centered(const SumSpec& spec, std::int64_t area, std::int64_t m,
                                         Window window = Window::Symmetric)
{
    return SingleTradeSeries(spec, area, SingleTradeSeries::Kind::Centered).sum(m, window);
}

/// First cosine traded, range [0, 1]; k_1 truncated to the window.
inline ScaledValue single_trade_unit(const SumSpec& spec, std::int64_t area, std::int64_t m,
                                     Window window = Window::Symmetric)
{
    return SingleTradeSeries(spec, area, SingleTradeSeries::Kind::Unit).sum(m, window);
}

/// Finite form of the [0, 1] single-trade coefficient, obtained by splitting
/// the range at 1/2: integer k_1 with factor (1 - cos(pi d))/(pi d), i.e.
/// 2/(pi d) for odd d and 0 for even d (d = 0 included). rational / pi.
inline ScaledValue single_trade_split(const SumSpec& spec, std::int64_t area)
{
    detail::require_parity(area, true, "single_trade_split");
    const std::int64_t n1 = spec.power(1);
    const std::int64_t n2 = spec.power(2);
    const HalfInt half_area = HalfInt::from_doubled(area);
    const auto lattice = detail::build_lattice(detail::integer_axes(spec, 3));
    BinomialCache cache;
    Rational total;
    for (std::int64_t k1 = -n1 / 2; k1 <= n1 / 2; ++k1) {
        const Rational& c1 = cache.coeff(n1, HalfInt::from_int(n1 / 2 + k1));
        for (const auto& point : lattice) {
            const std::int64_t d = (half_area - HalfInt::from_int(k1) + point.s2).as_integer();
            if (d % 2 == 0) {
                continue;
            }
            const HalfInt e2 = HalfInt::from_int(n2 / 2) - half_area - point.s1;
            total += Rational(2, d) * c1 * cache.coeff(n2, e2) * point.weight;
        }
    }
    return {std::move(total), 1, Shift::half()};
}

/// Four cosines traded: k_3, k_4 half-integer over the window, k_5..k_j
/// finite; both eliminated entries are half-integers. rational / pi^4.
inline ScaledValue four_trade_coefficient(const SumSpec& spec, std::int64_t area, std::int64_t m,
                                          Window window = Window::Symmetric)
{
    if (spec.j() < 4) {
        throw std::invalid_argument("four_trade_coefficient: need j >= 4, have " + std::to_string(spec.j()));
    }
    detail::require_parity(area, true, "four_trade_coefficient");
    std::vector<detail::Axis> axes{detail::half_axis(3, spec.power(3), m, window),
                                   detail::half_axis(4, spec.power(4), m, window)};
    for (auto& axis : detail::integer_axes(spec, 5)) {
        axes.push_back(std::move(axis));
    }
    BinomialCache cache;
    return {detail::eliminated_pair_sum(spec, area, detail::build_lattice(axes), cache), 4, Shift::half()};
}

/// sum_{k=-m..m} C(l1, l1p + k + s) C(l2, l2p - k - s). The m -> infinity
/// limit is C(l1 + l2, l1p + l2p); each term carries beta(s)^2 (s != 0).
inline ScaledValue chu_vandermonde_partial(std::int64_t l1, std::int64_t l2, std::int64_t l1p, std::int64_t l2p,
                                           const Shift& shift, std::int64_t m)
{
    if (l1p < 0 || l1p > l1 || l2p < 0 || l2p > l2) {
        throw std::invalid_argument("chu_vandermonde_partial: need 0 <= l1' <= l1 and 0 <= l2' <= l2");
    }
    if (m < 0) {
        throw std::invalid_argument("chu_vandermonde_partial: m must be >= 0");
    }
    const int exp = shift.is_zero() ? 0 : 2;
    ScaledValue total = ScaledValue::zero(exp, shift);
    for (std::int64_t k = -m; k <= m; ++k) {
        const Rational x = Rational(l1p + k) + shift.value();
        const Rational y = Rational(l2p - k) - shift.value();
        total += shifted_binomial(l1, x, shift) * shifted_binomial_either(l2, y, shift);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Coefficient tables

enum class Family { Even, Odd, OddSinc, TradeCentered, TradeUnit, TradeSplit, FourTrade };
enum class Symmetry { Symmetric, Antisymmetric };

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::Even: return "even";
    case Family::Odd: return "odd";
    case Family::OddSinc: return "odd-sinc";
    case Family::TradeCentered: return "trade-centered";
    case Family::TradeUnit: return "trade-unit";
    case Family::TradeSplit: return "trade-split";
    case Family::FourTrade: return "four-trade";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name)
{
    for (Family f : {Family::Even, Family::Odd, Family::OddSinc, Family::TradeCentered, Family::TradeUnit,
                     Family::TradeSplit, Family::FourTrade}) {
        if (name == family_name(f)) {
            return f;
        }
    }
    return std::nullopt;
}

inline bool family_uses_even_areas(Family f) { return f != Family::Odd && f != Family::OddSinc; }
inline bool family_is_truncated(Family f)
{
    return f == Family::TradeCentered || f == Family::TradeUnit || f == Family::FourTrade;
}

inline int family_scale_exp(Family f)
{
    switch (f) {
    case Family::Even: return 0;
    case Family::TradeSplit: return 1;
    case Family::FourTrade: return 4;
    default: return 2;
    }
}

inline Symmetry family_symmetry(Family f)
{
    return (f == Family::TradeUnit || f == Family::TradeSplit) ? Symmetry::Antisymmetric : Symmetry::Symmetric;
}

/// One coefficient of any family. `m` and `window` only matter for the
/// truncated families.
inline ScaledValue family_coefficient(Family family, const SumSpec& spec, std::int64_t area, std::int64_t m = 1,
                                      Window window = Window::Symmetric)
{
    switch (family) {
    case Family::Even: return ScaledValue::rational(even_area_coefficient(spec, area));
    case Family::Odd: return odd_area_coefficient(spec, area);
    case Family::OddSinc: return odd_area_coefficient_sinc(spec, area);
    case Family::TradeCentered: return single_trade_centered(spec, area, m, window);
    case Family::TradeUnit: return single_trade_unit(spec, area, m, window);
    case Family::TradeSplit: return single_trade_split(spec, area);
    case Family::FourTrade: return four_trade_coefficient(spec, area, m, window);
    }
    throw std::logic_error("family_coefficient: unknown family");
}

struct CoeffTable {
    SumSpec spec;
    Family family;
    std::map<std::int64_t, ScaledValue> entries;

    [[nodiscard]] Symmetry symmetry() const { return family_symmetry(family); }
};

/// Evaluates a family over the given areas on `workers` threads; the table is
/// identical for any worker count.
inline CoeffTable build_table(Family family, const SumSpec& spec, const std::vector<std::int64_t>& areas,
                              std::int64_t m = 1, Window window = Window::Symmetric, unsigned workers = 1)
{
    auto values = parallel_map(areas.size(), workers,
                               [&](std::size_t i) { return family_coefficient(family, spec, areas[i], m, window); });
    CoeffTable table{spec, family, {}};
    for (std::size_t i = 0; i < areas.size(); ++i) {
        table.entries.insert_or_assign(areas[i], std::move(values[i]));
    }
    return table;
}

/// True when every pair (A, -A) present in the table satisfies the family's
/// declared symmetry exactly (and A = 0 vanishes for antisymmetric tables).
inline bool has_declared_symmetry(const CoeffTable& table)
{
    for (const auto& [area, value] : table.entries) {
        auto mirror = table.entries.find(-area);
        if (mirror == table.entries.end()) {
            continue;
        }
        const ScaledValue expected = table.symmetry() == Symmetry::Symmetric ? value : -value;
        if (!(mirror->second == expected)) {
            return false;
        }
    }
    return true;
}

/// Odd areas in [-a_max, a_max].
inline std::vector<std::int64_t> odd_areas(std::int64_t a_max)
{
    std::vector<std::int64_t> out;
    for (std::int64_t a = -a_max; a <= a_max; ++a) {
        if (a % 2 != 0) {
            out.push_back(a);
        }
    }
    return out;
}

/// Even areas in [-a_max, a_max].
inline std::vector<std::int64_t> even_areas(std::int64_t a_max)
{
    std::vector<std::int64_t> out;
    for (std::int64_t a = -a_max; a <= a_max; ++a) {
        if (a % 2 == 0) {
            out.push_back(a);
        }
    }
    return out;
}

} // namespace shiftbin
