#pragma once

// Floating-point evaluation of the trigonometric integrals and binomial series,
// independent of the exact engine: its own Lanczos Gamma, its own quadrature.
// Only identity_report touches the exact coefficient tables, as the thing
// being checked.

#include "shiftbin/sum_spec.hpp"
#include "shiftbin/sums.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftbin::oracle {

struct QuadratureResult {
    double value = 0.0;
    std::int64_t samples = 0;
    double est_error = 0.0;
};

/// Deterministic pairwise summation.
inline double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) {
            s += x;
        }
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// ---------------------------------------------------------------------------
// Gamma

/// sin(pi x) with exact zeros at integers and argument reduction mod 2.
inline double sin_pi(double x)
{
    double r = std::fmod(x, 2.0);
    if (r < 0) {
        r += 2.0;
    }
    if (r == 0.0 || r == 1.0) {
        return 0.0;
    }
    return r < 1.0 ? std::sin(std::numbers::pi * (r <= 0.5 ? r : 1.0 - r))
                   : -std::sin(std::numbers::pi * (r - 1.0 <= 0.5 ? r - 1.0 : 2.0 - r));
}

namespace detail {

// Lanczos g = 7, n = 9.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_c{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

/// log Gamma(z) for z >= 1/2.
inline double lanczos_log_gamma(double z)
{
    z -= 1.0;
    double a = lanczos_c[0];
    const double t = z + lanczos_g + 0.5;
    for (std::size_t i = 1; i < lanczos_c.size(); ++i) {
        a += lanczos_c[i] / (z + static_cast<double>(i));
    }
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

} // namespace detail

inline bool is_gamma_pole(double z) { return z <= 0.0 && z == std::floor(z); }

/// log|Gamma(z)| and the sign of Gamma(z); z must not be a pole.
struct LogGamma {
    double log_abs = 0.0;
    int sign = 1;
};

inline LogGamma log_gamma(double z)
{
    if (is_gamma_pole(z)) {
        throw std::domain_error("log_gamma: pole at " + std::to_string(z));
    }
    if (z >= 0.5) {
        return {detail::lanczos_log_gamma(z), 1};
    }
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    const double sp = sin_pi(z);
    return {std::log(std::numbers::pi / std::abs(sp)) - detail::lanczos_log_gamma(1.0 - z), sp > 0 ? 1 : -1};
}

inline double float_gamma(double z)
{
    const auto lg = log_gamma(z);
    return lg.sign * std::exp(lg.log_abs);
}

/// C(l, x) = Gamma(l+1) / (Gamma(x+1) Gamma(l-x+1)) for real x; 0 where a
/// denominator Gamma has a pole.
inline double float_binomial(double l, double x)
{
    if (is_gamma_pole(x + 1.0) || is_gamma_pole(l - x + 1.0)) {
        return 0.0;
    }
    const auto a = log_gamma(l + 1.0);
    const auto b = log_gamma(x + 1.0);
    const auto c = log_gamma(l - x + 1.0);
    return a.sign * b.sign * c.sign * std::exp(a.log_abs - b.log_abs - c.log_abs);
}

// ---------------------------------------------------------------------------
// Integrands

/// prod_i (2 cos(pi t - pi (i-1) p/q))^(r l_i)
inline double cos_product(const SumSpec& spec, double t)
{
    const double f = spec.phase().fraction();
    double v = 1.0;
    for (std::size_t i = 0; i < spec.j(); ++i) {
        v *= std::pow(2.0 * std::cos(std::numbers::pi * (t - static_cast<double>(i) * f)),
                      static_cast<double>(spec.power(i + 1)));
    }
    return v;
}

/// prod_i (2 sin(pi t - pi (i-1) p/q))^(r l_i)
inline double sin_product(const SumSpec& spec, double t)
{
    const double f = spec.phase().fraction();
    double v = 1.0;
    for (std::size_t i = 0; i < spec.j(); ++i) {
        v *= std::pow(2.0 * std::sin(std::numbers::pi * (t - static_cast<double>(i) * f)),
                      static_cast<double>(spec.power(i + 1)));
    }
    return v;
}

/// The cosine product with the second factor's power n_2 replaced by
/// (n_2 - 1) plus one absolute value. Its Fourier series carries the odd areas.
inline double odd_area_integrand(const SumSpec& spec, double t)
{
    const double f = spec.phase().fraction();
    double v = 1.0;
    for (std::size_t i = 0; i < spec.j(); ++i) {
        const double c = 2.0 * std::cos(std::numbers::pi * (t - static_cast<double>(i) * f));
        const auto n = static_cast<double>(spec.power(i + 1));
        if (i == 1) {
            v *= n > 0 ? std::pow(c, n - 1.0) * std::abs(c) : (c >= 0 ? 1.0 : -1.0);
        } else {
            v *= std::pow(c, n);
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace detail {

inline double sample_mean(const SumSpec& spec, std::int64_t n)
{
    std::vector<double> ys(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        ys[static_cast<std::size_t>(i)] = cos_product(spec, static_cast<double>(i) / static_cast<double>(n));
    }
    return pairwise_sum(ys) / static_cast<double>(n);
}

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n)
{
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

inline const GaussRule& gauss20()
{
    static const GaussRule rule = gauss_legendre(20);
    return rule;
}

template <class F>
double composite_gauss(const F& f, double a, double b, int panels)
{
    const auto& rule = gauss20();
    std::vector<double> parts;
    parts.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            parts.push_back(rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]));
        }
    }
    return 0.5 * h * pairwise_sum(parts);
}

/// Composite Gauss-Legendre over [a, b] split at the given interior points,
/// with the error estimated from a doubling of the panel count.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, std::vector<double> breaks, int panels = 16)
{
    std::vector<double> cuts{a};
    for (double x : breaks) {
        if (x > a && x < b) {
            cuts.push_back(x);
        }
    }
    cuts.push_back(b);
    double coarse = 0.0;
    double fine = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        coarse += composite_gauss(f, cuts[i], cuts[i + 1], panels);
        fine += composite_gauss(f, cuts[i], cuts[i + 1], 2 * panels);
    }
    const auto nodes = static_cast<std::int64_t>(2 * panels * 20 * static_cast<int>(cuts.size() - 1));
    return {fine, nodes, std::abs(fine - coarse)};
}

} // namespace detail

/// Integral over [0, 1] of the cosine product, as the mean of N = rn + 1
/// equally spaced samples (exact for a trigonometric polynomial of that
/// degree). est_error is the change under doubling N.
inline QuadratureResult trig_integral_full(const SumSpec& spec)
{
    const std::int64_t n = spec.r() * spec.n() + 1;
    const double value = detail::sample_mean(spec, n);
    const double doubled = detail::sample_mean(spec, 2 * n);
    return {value, n, std::abs(doubled - value)};
}

enum class HalfRange { Centered, Positive }; // [-1/2, 1/2] and [0, 1/2]
enum class Integrand { CosProduct, SinProduct, OddArea };

/// Gauss-Legendre integral of one of the integrands over a half range. The
/// odd-area integrand has a kink where its second cosine vanishes; the range
/// is split there.
inline QuadratureResult trig_integral_halfrange(const SumSpec& spec, HalfRange range, Integrand kind)
{
    const double a = range == HalfRange::Centered ? -0.5 : 0.0;
    const double b = 0.5;
    std::vector<double> breaks;
    if (kind == Integrand::OddArea) {
        // cos(pi (t - p/q)) = 0 at t = p/q - 1/2 (mod 1)
        double k = spec.phase().fraction() - 0.5;
        k -= std::floor(k + 0.5);
        breaks.push_back(k);
    }
    switch (kind) {
    case Integrand::CosProduct:
        return detail::integrate([&](double t) { return cos_product(spec, t); }, a, b, breaks);
    case Integrand::SinProduct:
        return detail::integrate([&](double t) { return sin_product(spec, t); }, a, b, breaks);
    case Integrand::OddArea:
        return detail::integrate([&](double t) { return odd_area_integrand(spec, t); }, a, b, breaks);
    }
    throw std::logic_error("trig_integral_halfrange: unknown integrand");
}

/// sum_{|k| <= K} C(l, l/2 + k + s) exp(2 pi i (k + s) t), k running over
/// integers for even l and half-integers for odd l. Tends to (2 cos pi t)^l
/// for |t| < 1/2.
inline std::complex<double> shifted_series_eval(std::int64_t l, double s, double t, std::int64_t K)
{
    if (!(std::abs(t) < 0.5)) {
        throw std::invalid_argument("shifted_series_eval: need |t| < 1/2");
    }
    if (l < 0 || K < 0) {
        throw std::invalid_argument("shifted_series_eval: need l >= 0 and K >= 0");
    }
    const double offset = l % 2 == 0 ? 0.0 : 0.5;
    std::vector<double> re;
    std::vector<double> im;
    // k = i + offset for i = -K .. K-1 (odd l) or -K .. K (even l)
    const std::int64_t last = l % 2 == 0 ? K : K - 1;
    for (std::int64_t i = -K; i <= last; ++i) {
        const double k = static_cast<double>(i) + offset;
        const double c = float_binomial(static_cast<double>(l), static_cast<double>(l) / 2.0 + k + s);
        const double phase = 2.0 * std::numbers::pi * (k + s) * t;
        re.push_back(c * std::cos(phase));
        im.push_back(c * std::sin(phase));
    }
    return {pairwise_sum(re), pairwise_sum(im)};
}

// ---------------------------------------------------------------------------
// Oracle-versus-exact comparisons

struct Check {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline Check make_check(std::string name, double lhs, double rhs, double tol)
{
    const double err = std::abs(lhs - rhs);
    return {std::move(name), lhs, rhs, err, tol, err < tol};
}

struct IdentityOptions {
    double even_tol = 1e-9;
    std::int64_t odd_a_max = 201;
    // The odd-area series is truncated at |A| <= odd_a_max; with zero parts the
    // integrand has a jump and the tail decays slowly (~1e-5 at 201).
    double odd_tol = 1e-4;
    double sin_tol = 1e-9;
    bool include_odd = true;
    bool include_sin = true;
};

/// Largest |A| with a non-zero split single-trade coefficient: its second
/// entry n_2/2 - A/2 - s_1 is an integer in [0, n_2].
inline std::int64_t split_support_bound(const SumSpec& spec)
{
    std::int64_t bound = spec.power(2);
    for (std::size_t i = 3; i <= spec.j(); ++i) {
        bound += static_cast<std::int64_t>(i - 1) * spec.power(i);
    }
    return bound;
}

/// Integral-side versus coefficient-side evaluations of the area expansions:
///   even-cosine:  full integral = sum_A cos(pi A p/q) even_A
///   odd-cosine:   odd-area integral over [-1/2,1/2] = sum_{A odd} cos(pi A p/q) odd_A   (truncated)
///   split-sine:   int_0^{1/2} (cos product - sin product) = sum_A sin(pi A p/q) split_A
inline std::vector<Check> identity_report(const SumSpec& spec, const IdentityOptions& opt = {})
{
    std::vector<Check> out;
    const Phase& phase = spec.phase();
    {
        double rhs = 0.0;
        for (auto area : even_area_support(spec)) {
            rhs += phase.cos_weight(area) * even_area_coefficient(spec, area).to_double();
        }
        out.push_back(make_check("even-cosine", trig_integral_full(spec).value, rhs, opt.even_tol));
    }
    if (opt.include_odd) {
        std::vector<double> terms;
        const std::int64_t top = opt.odd_a_max % 2 != 0 ? opt.odd_a_max : opt.odd_a_max - 1;
        for (std::int64_t area = -top; area <= top; area += 2) {
            terms.push_back(phase.cos_weight(area) * odd_area_coefficient(spec, area).to_double());
        }
        const auto lhs = trig_integral_halfrange(spec, HalfRange::Centered, Integrand::OddArea);
        out.push_back(make_check("odd-cosine", lhs.value, pairwise_sum(terms), opt.odd_tol));
    }
    if (opt.include_sin) {
        const std::int64_t bound = split_support_bound(spec);
        std::vector<double> terms;
        for (std::int64_t area = -bound; area <= bound; area += 2) {
            terms.push_back(phase.sin_weight(area) * single_trade_split(spec, area).to_double());
        }
        const double lhs = trig_integral_halfrange(spec, HalfRange::Positive, Integrand::CosProduct).value -
                           trig_integral_halfrange(spec, HalfRange::Positive, Integrand::SinProduct).value;
        out.push_back(make_check("split-sine", lhs, pairwise_sum(terms), opt.sin_tol));
    }
    return out;
}

} // namespace shiftbin::oracle
