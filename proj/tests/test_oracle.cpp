#include "shiftbin/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace shiftbin;
using namespace shiftbin::oracle;

TEST_CASE("float Gamma")
{
    CHECK(float_gamma(0.5) == Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(float_gamma(5.0) == Catch::Approx(24.0).epsilon(1e-13));
    CHECK(float_gamma(-1.5) == Catch::Approx(4.0 * std::sqrt(std::numbers::pi) / 3.0).epsilon(1e-13));
    CHECK(float_gamma(-0.5) == Catch::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(-2.0), std::domain_error);
    CHECK(float_binomial(4, 2) == Catch::Approx(6.0));
    CHECK(float_binomial(2, 3) == 0.0);
    CHECK(float_binomial(2, -1) == 0.0);
    CHECK(float_binomial(2, 0.5) == Catch::Approx(16.0 / (3.0 * std::numbers::pi)));
}

TEST_CASE("full-period integral")
{
    CHECK(trig_integral_full(SumSpec(2, {1, 1})).value == Catch::Approx(6.0).epsilon(1e-14));
    CHECK(trig_integral_full(SumSpec(2, {1, 1}, Phase::ratio(1, 2))).value == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(trig_integral_full(SumSpec(2, {0, 0})).value == 1.0);
    for (const auto& parts : std::vector<std::vector<std::int64_t>>{{1, 1}, {2, 1, 1}, {1, 1, 1, 1}, {3, 2}}) {
        const auto res = trig_integral_full(SumSpec(2, parts, Phase::ratio(2, 7)));
        CHECK(res.samples == 2 * SumSpec(2, parts).n() + 1);
        CHECK(res.est_error < 1e-12 * std::max(1.0, std::abs(res.value)));
    }
}

TEST_CASE("half-range quadrature")
{
    const SumSpec spec(2, {1, 2}, Phase::ratio(1, 5));
    // the cosine product has period 1, so any unit interval gives the same value
    const auto centered = trig_integral_halfrange(spec, HalfRange::Centered, Integrand::CosProduct);
    CHECK(centered.value == Catch::Approx(trig_integral_full(spec).value).epsilon(1e-13));
    CHECK(centered.est_error < 1e-12);
    const auto empty = SumSpec(2, {0, 0});
    CHECK(trig_integral_halfrange(empty, HalfRange::Positive, Integrand::SinProduct).value == Catch::Approx(0.5));
    CHECK(trig_integral_halfrange(empty, HalfRange::Centered, Integrand::SinProduct).value == Catch::Approx(1.0));
}

TEST_CASE("shifted binomial theorem: series converges to (2 cos pi t)^l")
{
    for (std::int64_t l = 0; l <= 6; ++l) {
        for (double s : {0.5, 1.0 / 3.0, 0.25}) {
            for (double t : {0.0, 0.3, -0.3, 0.45, -0.45}) {
                const double target = std::pow(2.0 * std::cos(std::numbers::pi * t), static_cast<double>(l));
                double prev = std::abs(shifted_series_eval(l, s, t, 10) - target);
                for (std::int64_t K : {100, 1000}) {
                    const double err = std::abs(shifted_series_eval(l, s, t, K) - target);
                    CHECK((err < prev || err < 1e-12));
                    prev = err;
                }
                CHECK(prev < 1e-2);
            }
        }
    }
}

TEST_CASE("shifted binomial theorem: s = 0 is a finite sum")
{
    for (std::int64_t l = 0; l <= 6; ++l) {
        for (double t : {0.0, 0.2, -0.41}) {
            const double target = std::pow(2.0 * std::cos(std::numbers::pi * t), static_cast<double>(l));
            const auto v = shifted_series_eval(l, 0.0, t, l);
            CHECK(std::abs(v - target) < 1e-12);
        }
    }
    CHECK_THROWS_AS(shifted_series_eval(2, 0.5, 0.5, 10), std::invalid_argument);
}

TEST_CASE("identity report: integrals against exact coefficient tables")
{
    for (const auto& parts : std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 2}, {1, 1, 1}, {2, 1, 1}, {1, 0, 1}}) {
        for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 5}, {2, 7}}) {
            const SumSpec spec(2, parts, Phase::ratio(p, q));
            for (const auto& c : identity_report(spec)) {
                INFO(spec.str() << " " << c.name << " err " << c.abs_err);
                CHECK(c.pass);
            }
        }
    }
    // q = infinity: the cosine side is the central binomial
    const auto report = identity_report(SumSpec(2, {1, 1, 1}), {.include_odd = false, .include_sin = false});
    CHECK(report.front().rhs == 20.0);
}
