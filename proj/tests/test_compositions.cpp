#include "shiftbin/compositions.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace shiftbin;

namespace {

/// Every list of non-negative parts of length <= max_len summing to n,
/// filtered by is_g_composition.
std::set<std::vector<std::int64_t>> brute_force(std::int64_t n, std::int64_t g, std::size_t max_len)
{
    std::set<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t rem) {
        if (rem == 0 && !cur.empty() && is_g_composition(cur, g)) {
            out.insert(cur);
        }
        if (cur.size() == max_len) {
            return;
        }
        for (std::int64_t x = 0; x <= rem; ++x) {
            cur.push_back(x);
            rec(rem - x);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

} // namespace

TEST_CASE("small enumerations")
{
    const auto c22 = enumerate_g_compositions(2, 2);
    REQUIRE(c22.size() == 2);
    CHECK(c22[0].parts == std::vector<std::int64_t>{2});
    CHECK(c22[1].parts == std::vector<std::int64_t>{1, 1});
    CHECK(enumerate_g_compositions(1, 2).size() == 1);

    bool has_embedded_zero = false;
    for (const auto& c : enumerate_g_compositions(2, 3)) {
        has_embedded_zero = has_embedded_zero || c.parts == std::vector<std::int64_t>{1, 0, 1};
    }
    CHECK(has_embedded_zero);
    CHECK_THROWS_AS(enumerate_g_compositions(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_g_compositions(2, 1), std::invalid_argument);
}

TEST_CASE("enumeration matches brute force, each composition once, ordered")
{
    for (std::int64_t n = 1; n <= 5; ++n) {
        for (std::int64_t g = 2; g <= 4; ++g) {
            const auto listed = enumerate_g_compositions(n, g);
            const auto max_len = static_cast<std::size_t>(n + (n - 1) * (g - 2));
            const auto expected = brute_force(n, g, max_len);
            std::set<std::vector<std::int64_t>> seen;
            for (std::size_t i = 0; i < listed.size(); ++i) {
                CHECK(listed[i].n() == n);
                CHECK(is_g_composition(listed[i].parts, g));
                CHECK(seen.insert(listed[i].parts).second);
                if (i > 0) {
                    const auto& a = listed[i - 1].parts;
                    const auto& b = listed[i].parts;
                    CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
                }
            }
            CHECK(seen == expected);
        }
    }
}

TEST_CASE("c_g weights: pinned values")
{
    CHECK(cg_weight({{2}, 2}) == Rational(1, 2));
    CHECK(cg_weight({{1, 1}, 2}) == Rational(1));
    CHECK(cg_sum_rule(2, 2) == Rational(6));
}

TEST_CASE("c_g: both forms agree and the sum rule holds for n <= 6, g <= 4")
{
    for (std::int64_t n = 1; n <= 6; ++n) {
        for (std::int64_t g = 2; g <= 4; ++g) {
            for_each_g_composition(n, g, [&](const GComposition& c) {
                CHECK(cg_weight(c) == cg_weight_factorial_form(c));
            });
            CHECK(cg_sum_rule(n, g) == newton_binomial(g * n, n));
        }
    }
}

TEST_CASE("boundary zeros would break the sum rule")
{
    // (0, 2) and (2, 0) are not 3-compositions; adding them overshoots C(6, 2).
    CHECK_FALSE(is_g_composition({0, 2}, 3));
    CHECK_FALSE(is_g_composition({2, 0}, 3));
    CHECK(is_g_composition({1, 0, 1}, 3));
    CHECK_FALSE(is_g_composition({1, 0, 0, 1}, 3));
    CHECK(is_g_composition({1, 0, 0, 1}, 4));
}

TEST_CASE("empty window is a domain error")
{
    CHECK_THROWS_AS(cg_weight({{0, 0, 1}, 2}), std::domain_error);
}
