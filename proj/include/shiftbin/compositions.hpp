#pragma once

// g-compositions of n and their combinatorial weights c_g.
//
// A g-composition is a list of non-negative parts summing to n, with no run
// of more than g-2 consecutive zeros. The first and last parts are positive:
// only with that reading does g n sum c_g = C(gn, n) hold (boundary zeros
// inflate the sum by exactly (g-1)^2).

#include "shiftbin/binomial.hpp"
#include "shiftbin/rational.hpp"

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftbin {

struct GComposition {
    std::vector<std::int64_t> parts;
    std::int64_t g = 2;

    [[nodiscard]] std::int64_t n() const { return std::accumulate(parts.begin(), parts.end(), std::int64_t{0}); }
    [[nodiscard]] std::size_t j() const { return parts.size(); }

    [[nodiscard]] std::string str(char sep = ',') const
    {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) {
                out += sep;
            }
            out += std::to_string(parts[i]);
        }
        return out;
    }

    friend bool operator==(const GComposition&, const GComposition&) = default;
};

inline bool is_g_composition(const std::vector<std::int64_t>& parts, std::int64_t g)
{
    if (parts.empty() || g < 2 || parts.front() <= 0 || parts.back() <= 0) {
        return false;
    }
    std::int64_t run = 0;
    for (auto x : parts) {
        if (x < 0) {
            return false;
        }
        run = x == 0 ? run + 1 : 0;
        if (run > g - 2) {
            return false;
        }
    }
    return true;
}

/// Calls `visit` on every g-composition of n exactly once, ordered by length
/// and then lexicographically by parts.
inline void for_each_g_composition(std::int64_t n, std::int64_t g, const std::function<void(const GComposition&)>& visit)
{
    if (n < 1) {
        throw std::invalid_argument("g-compositions: n must be >= 1");
    }
    if (g < 2) {
        throw std::invalid_argument("g-compositions: g must be >= 2");
    }
    // n positive parts separated by at most g-2 zeros each.
    const std::int64_t max_len = n + (n - 1) * (g - 2);
    GComposition current{{}, g};
    for (std::int64_t len = 1; len <= max_len; ++len) {
        current.parts.assign(static_cast<std::size_t>(len), 0);
        std::function<void(std::size_t, std::int64_t, std::int64_t)> fill = [&](std::size_t pos, std::int64_t rem,
                                                                                 std::int64_t run) {
            const auto slots = static_cast<std::int64_t>(len) - static_cast<std::int64_t>(pos);
            if (slots == 0) {
                if (rem == 0) {
                    visit(current);
                }
                return;
            }
            const bool boundary = pos == 0 || slots == 1;
            // the last slot must take whatever remains
            const std::int64_t lo = slots == 1 ? rem : (boundary ? 1 : 0);
            const std::int64_t hi = rem - (slots - 1 > 0 ? 1 : 0);
            for (std::int64_t x = lo; x <= hi; ++x) {
                if (x == 0 && run + 1 > g - 2) {
                    continue;
                }
                current.parts[pos] = x;
                fill(pos + 1, rem - x, x == 0 ? run + 1 : 0);
            }
        };
        fill(0, n, 0);
    }
}

inline std::vector<GComposition> enumerate_g_compositions(std::int64_t n, std::int64_t g)
{
    std::vector<GComposition> out;
    for_each_g_composition(n, g, [&](const GComposition& c) { out.push_back(c); });
    return out;
}

namespace detail {

/// Parts zero-padded to length g when shorter, so that every window of g
/// consecutive parts used by the weight exists.
inline std::vector<std::int64_t> padded_parts(const GComposition& comp)
{
    if (comp.g < 2) {
        throw std::invalid_argument("c_g: g must be >= 2");
    }
    std::vector<std::int64_t> l = comp.parts;
    if (l.empty()) {
        throw std::invalid_argument("c_g: empty composition");
    }
    if (static_cast<std::int64_t>(l.size()) < comp.g) {
        l.resize(static_cast<std::size_t>(comp.g), 0);
    }
    return l;
}

inline std::int64_t window_sum(const std::vector<std::int64_t>& l, std::size_t first, std::size_t count)
{
    return std::accumulate(l.begin() + static_cast<std::ptrdiff_t>(first),
                           l.begin() + static_cast<std::ptrdiff_t>(first + count), std::int64_t{0});
}

} // namespace detail

/// c_g in binomial-product form:
///
///     (l_1+...+l_{g-1} - 1)! / (l_1! ... l_{g-1}!)
///         * prod_{i=1}^{j-g+1} C(l_i + ... + l_{i+g-1} - 1, l_{i+g-1})
///
/// Throws std::domain_error if a window sum is zero (factorial of -1).
inline Rational cg_weight(const GComposition& comp)
{
    const auto l = detail::padded_parts(comp);
    const auto g = static_cast<std::size_t>(comp.g);
    const std::int64_t head = detail::window_sum(l, 0, g - 1);
    Rational out(factorial(head - 1));
    for (std::size_t i = 0; i + 1 < g; ++i) {
        out /= Rational(factorial(l[i]));
    }
    for (std::size_t i = 0; i + g <= l.size(); ++i) {
        const std::int64_t top = detail::window_sum(l, i, g) - 1;
        if (top < 0) {
            throw std::domain_error("c_g: empty window in composition (" + comp.str() + ")");
        }
        out *= newton_binomial(top, l[i + g - 1]);
    }
    return out;
}

/// c_g in factorial-ratio form:
///
///     prod_{i=1}^{j-g+1} (l_i+...+l_{i+g-1} - 1)!
///       / prod_{i=1}^{j-g} (l_{i+1}+...+l_{i+g-1} - 1)!  * prod 1/l_i!
inline Rational cg_weight_factorial_form(const GComposition& comp)
{
    const auto l = detail::padded_parts(comp);
    const auto g = static_cast<std::size_t>(comp.g);
    Rational out(1);
    for (std::size_t i = 0; i + g <= l.size(); ++i) {
        out *= Rational(factorial(detail::window_sum(l, i, g) - 1));
    }
    for (std::size_t i = 0; i + g < l.size(); ++i) {
        out /= Rational(factorial(detail::window_sum(l, i + 1, g - 1) - 1));
    }
    for (auto x : l) {
        out /= Rational(factorial(x));
    }
    return out;
}

/// g n sum_{g-compositions of n} c_g; equals C(gn, n).
inline Rational cg_sum_rule(std::int64_t n, std::int64_t g)
{
    Rational total;
    for_each_g_composition(n, g, [&](const GComposition& c) { total += cg_weight(c); });
    return total * Rational(g * n);
}

} // namespace shiftbin
