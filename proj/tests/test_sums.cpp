#include "shiftbin/oracle.hpp"
#include "shiftbin/sums.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace shiftbin;

namespace {

std::vector<std::vector<std::int64_t>> part_grid()
{
    return {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {0, 2}, {2, 0}, {1, 1, 1}, {2, 1, 1}, {1, 0, 1}, {1, 1, 1, 1}};
}

} // namespace

TEST_CASE("even-area coefficients: two factors")
{
    // (2cos pi t)^2 (2cos pi(t - p/q))^2 integrates to 4 + 2 cos(2 pi p/q)
    const SumSpec spec(2, {1, 1});
    CHECK(even_area_support(spec) == std::vector<std::int64_t>{-2, 0, 2});
    CHECK(even_area_coefficient(spec, 0) == Rational(4));
    CHECK(even_area_coefficient(spec, 2) == Rational(1));
    CHECK(even_area_coefficient(spec, -2) == Rational(1));
    CHECK(even_area_coefficient(spec, 4) == Rational(0));
    CHECK_THROWS_AS(even_area_coefficient(spec, 1), std::invalid_argument);
}

TEST_CASE("sum rule: even coefficients add up to the central binomial")
{
    CHECK(sum_rule_even(SumSpec(2, {1, 1})) == Rational(6));
    CHECK(sum_rule_even(SumSpec(2, {1, 1, 1})) == Rational(20));
    for (const auto& parts : part_grid()) {
        for (std::int64_t r : {2, 4}) {
            const SumSpec spec(r, parts);
            CHECK(sum_rule_even(spec) == spec.central_binomial());
        }
    }
}

TEST_CASE("even support sits inside the bracket and is symmetric")
{
    for (const auto& parts : part_grid()) {
        const SumSpec spec(2, parts);
        const auto support = even_area_support(spec);
        for (auto a : support) {
            CHECK(std::abs(a) <= support_bracket(spec));
            CHECK(std::find(support.begin(), support.end(), -a) != support.end());
            CHECK(!even_area_coefficient(spec, a).is_zero());
        }
    }
    CHECK(even_area_support(SumSpec(2, {1, 0})) == std::vector<std::int64_t>{0});
}

TEST_CASE("odd-area coefficients: pinned values")
{
    const SumSpec spec(2, {1, 1});
    CHECK(odd_area_coefficient(spec, 1) == ScaledValue(Rational(256, 9), 2, Shift::half()));
    CHECK(odd_area_coefficient(spec, 3) == ScaledValue(Rational(256, 225), 2, Shift::half()));
    CHECK(odd_area_coefficient(spec, -1) == odd_area_coefficient(spec, 1));
    CHECK_THROWS_AS(odd_area_coefficient(spec, 2), std::invalid_argument);
    // odd coefficients are not sign-definite in general
    CHECK(odd_area_coefficient(SumSpec(2, {1, 2}), 5).coeff() < Rational(0));
}

TEST_CASE("odd-area coefficients: direct and sinc forms are identical")
{
    for (const auto& parts : part_grid()) {
        const SumSpec spec(2, parts);
        for (auto a : odd_areas(9)) {
            CHECK(odd_area_coefficient(spec, a) == odd_area_coefficient_sinc(spec, a));
        }
    }
}

TEST_CASE("centered single trade converges to the even coefficient")
{
    for (const auto& parts : std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 2}, {1, 1, 1}}) {
        const SumSpec spec(2, parts);
        for (std::int64_t a : {0, 2}) {
            const double target = even_area_coefficient(spec, a).to_double();
            const double e10 = std::abs(single_trade_centered(spec, a, 10).to_double() - target);
            const double e100 = std::abs(single_trade_centered(spec, a, 100).to_double() - target);
            CHECK(e100 < e10);
            CHECK(e100 < 1e-3);
        }
    }
}

TEST_CASE("unit single trade converges to the split form")
{
    const SumSpec spec(2, {1, 1});
    // finite split form at A = 2: 4/pi
    CHECK(single_trade_split(spec, 2) == ScaledValue(Rational(4), 1, Shift::half()));
    CHECK(single_trade_split(spec, 0).coeff().is_zero());
    // outside the support both forms vanish term by term
    CHECK(single_trade_split(spec, 4).coeff().is_zero());
    CHECK(single_trade_unit(spec, 4, 10).coeff().is_zero());
    for (std::int64_t a : {2, -2}) {
        const double target = single_trade_split(spec, a).to_double();
        const double e10 = std::abs(single_trade_unit(spec, a, 10).to_double() - target);
        const double e100 = std::abs(single_trade_unit(spec, a, 100).to_double() - target);
        CHECK(e100 < e10);
    }
}

TEST_CASE("four-trade coefficients sum towards the central binomial")
{
    const SumSpec spec(2, {1, 1, 1, 1});
    auto total = [&](std::int64_t m, std::int64_t a_max) {
        double sum = 0.0;
        for (auto a : even_areas(a_max)) {
            sum += four_trade_coefficient(spec, a, m).to_double();
        }
        return sum;
    };
    const double target = spec.central_binomial().to_double(); // 70
    CHECK(std::abs(total(20, 60) - target) < std::abs(total(5, 20) - target));
    CHECK(std::abs(total(20, 60) - target) < 1.0);
    CHECK(four_trade_coefficient(spec, 2, 3).scale_exp() == 4);
    CHECK_THROWS_AS(four_trade_coefficient(SumSpec(2, {1, 1, 1}), 0, 3), std::invalid_argument);
}

TEST_CASE("generalized Chu-Vandermonde partial sums")
{
    // s = 0: finite classical sum, exact once the window covers the support
    CHECK(chu_vandermonde_partial(2, 2, 1, 1, Shift::zero(), 2) == ScaledValue::rational(Rational(6)));
    for (const char* s : {"1/2", "1/3"}) {
        const Shift shift = Shift::parse(s);
        const double e10 = std::abs(chu_vandermonde_partial(2, 2, 1, 1, shift, 10).to_double() - 6.0);
        const double e100 = std::abs(chu_vandermonde_partial(2, 2, 1, 1, shift, 100).to_double() - 6.0);
        CHECK(e100 < e10);
        CHECK(e100 < 1e-5);
    }
}

TEST_CASE("every coefficient table carries its declared symmetry")
{
    const SumSpec spec(2, {1, 2, 1});
    for (Family f : {Family::Even, Family::Odd, Family::OddSinc, Family::TradeCentered, Family::TradeUnit,
                     Family::TradeSplit}) {
        const auto areas = family_uses_even_areas(f) ? even_areas(10) : odd_areas(9);
        const auto table = build_table(f, spec, areas, 6, Window::Symmetric);
        CHECK(has_declared_symmetry(table));
        for (const auto& [a, v] : table.entries) {
            CHECK(v.scale_exp() == family_scale_exp(f));
        }
    }
    CHECK(family_symmetry(Family::TradeUnit) == Symmetry::Antisymmetric);
    CHECK(has_declared_symmetry(build_table(Family::FourTrade, SumSpec(2, {1, 1, 1, 1}), even_areas(6), 3)));
}

TEST_CASE("one-sided window breaks term-level symmetry of truncated tables")
{
    const SumSpec spec(2, {1, 1});
    const auto sym = build_table(Family::TradeCentered, spec, even_areas(4), 5, Window::Symmetric);
    const auto one_sided = build_table(Family::TradeCentered, spec, even_areas(4), 5, Window::OneSided);
    CHECK(has_declared_symmetry(sym));
    CHECK_FALSE(has_declared_symmetry(one_sided));
}

TEST_CASE("tables do not depend on the worker count")
{
    const SumSpec spec(2, {1, 1, 1});
    const auto one = build_table(Family::Odd, spec, odd_areas(15), 1, Window::Symmetric, 1);
    const auto four = build_table(Family::Odd, spec, odd_areas(15), 1, Window::Symmetric, 4);
    CHECK(one.entries == four.entries);
}

TEST_CASE("family names round-trip")
{
    for (Family f : {Family::Even, Family::Odd, Family::OddSinc, Family::TradeCentered, Family::TradeUnit,
                     Family::TradeSplit, Family::FourTrade}) {
        CHECK(parse_family(family_name(f)) == f);
    }
    CHECK_FALSE(parse_family("bogus").has_value());
}
