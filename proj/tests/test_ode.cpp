#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/ode.hpp"

#include <cmath>
#include <numbers>

using namespace lienard;

namespace {
const auto harmonic = [](double, const ode::Vec<2>& y) -> ode::Vec<2> { return {y[1], -y[0]}; };
}

TEST_CASE("dense output follows sin over a period") {
    const auto times = ode::uniform_times(0.0, 2 * std::numbers::pi, 257);
    const auto out = ode::integrate<2>(harmonic, 0.0, {0.0, 1.0}, times);
    REQUIRE(out.size() == times.size());
    double worst = 0.0;
    for (const auto& s : out)
        worst = std::max(worst, std::abs(s.y[0] - std::sin(s.t)));
    CHECK(worst < 1e-9);
    CHECK(std::abs(out.back().y[0]) < 1e-8);
}

TEST_CASE("backward integration returns to the start") {
    const double t_end = 5.0;
    const double fwd_t[] = {t_end};
    const auto fwd = ode::integrate<2>(harmonic, 0.0, {0.3, -0.7}, fwd_t);
    const double back_t[] = {0.0};
    const auto back = ode::integrate<2>(harmonic, t_end, fwd.back().y, back_t);
    CHECK(std::abs(back.back().y[0] - 0.3) < 1e-10);
    CHECK(std::abs(back.back().y[1] + 0.7) < 1e-10);
}

TEST_CASE("deterministic for fixed inputs") {
    const auto times = ode::uniform_times(0.0, 3.0, 11);
    const auto a = ode::integrate<2>(harmonic, 0.0, {1.0, 0.0}, times);
    const auto b = ode::integrate<2>(harmonic, 0.0, {1.0, 0.0}, times);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].y == b[i].y);
}

TEST_CASE("rk4 converges at fourth order") {
    const auto decay = [](double, const ode::Vec<1>& y) -> ode::Vec<1> { return {-y[0]}; };
    const double e1 = std::abs(ode::integrate_rk4<1>(decay, 0.0, {1.0}, 1.0, 20)[0] - std::exp(-1.0));
    const double e2 = std::abs(ode::integrate_rk4<1>(decay, 0.0, {1.0}, 1.0, 40)[0] - std::exp(-1.0));
    CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("blow-up is reported with the last good state") {
    // y' = y^2, y(0) = 1 blows up at t = 1.
    const auto blow = [](double, const ode::Vec<1>& y) -> ode::Vec<1> { return {y[0] * y[0]}; };
    const double times[] = {2.0};
    try {
        ode::integrate<1>(blow, 0.0, {1.0}, times, {1e-10, 1e-10, 0.0, 100000});
        FAIL("expected IntegrationFailure");
    } catch (const ode::IntegrationFailure& e) {
        CHECK(e.last_t < 1.0);
        CHECK(e.last_t > 0.9);
        REQUIRE(e.last_state.size() == 1);
        CHECK(std::isfinite(e.last_state[0]));
    }
}

TEST_CASE("argument validation") {
    const double same[] = {0.0};
    CHECK_THROWS_AS(ode::integrate<2>(harmonic, 0.0, {1.0, 0.0}, same), DomainError);
    const double unordered[] = {1.0, 0.5, 2.0};
    CHECK_THROWS_AS(ode::integrate<2>(harmonic, 0.0, {1.0, 0.0}, unordered), DomainError);
    const double t[] = {1.0};
    CHECK_THROWS_AS(ode::integrate<2>(harmonic, 0.0, {1.0, 0.0}, t, {0.0, 1e-9}), DomainError);
}
