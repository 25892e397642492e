#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/classical.hpp"
#include "lienard/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lienard;
using std::numbers::pi;

namespace {

// Independent copy of the closed form, differentiated numerically.
double orbit(double t, double k, double w, double A, double d) {
    const double th = w * t + d;
    return A * std::sin(th) / (1.0 - k * A / (3.0 * w) * std::cos(th));
}

double fd_residual(double t, double k, double w, double A, double d) {
    const double h = 1e-3;
    const double xm2 = orbit(t - 2 * h, k, w, A, d), xm1 = orbit(t - h, k, w, A, d);
    const double x0 = orbit(t, k, w, A, d);
    const double xp1 = orbit(t + h, k, w, A, d), xp2 = orbit(t + 2 * h, k, w, A, d);
    const double v = (xm2 - 8 * xm1 + 8 * xp1 - xp2) / (12 * h);
    const double acc = (-xm2 + 16 * xm1 - 30 * x0 + 16 * xp1 - xp2) / (12 * h * h);
    return acc + k * x0 * v + w * w * x0 + k * k / 9.0 * x0 * x0 * x0;
}

} // namespace

TEST_CASE("right-hand side") {
    CHECK(lienard_rhs({0.0, 1.0, 0.0}, {1.0, 1.0}) == doctest::Approx(-10.0 / 9.0).epsilon(1e-15));
    CHECK(lienard_rhs({0.0, 2.0, 0.0}, {0.0, 1.0}) == -2.0);
    CHECK(lienard_rhs({0.0, 1.0, 0.0}, {0.0, 2.0}) == -4.0);
    CHECK(lienard_rhs({0.0, 1.0, 1.0}, {3.0, 1.0}) == doctest::Approx(-(3.0 + 1.0 + 1.0)).epsilon(1e-15));
}

TEST_CASE("closed-form orbit values") {
    const LienardParams p(1.0, 1.0);
    CHECK(exact_x(pi / 2, p, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(exact_x(0.0, p, {1.0, 0.0}) == 0.0);
    // x(pi) = 0 and the orbit is odd about the phase origin only when c = 0
    CHECK(std::abs(exact_x(pi, p, {1.0, 0.0})) < 1e-15);
    CHECK(orbit_turning_point(p, {1.0, 0.0}) == doctest::Approx(1.0 / std::sqrt(1.0 - 1.0 / 9.0)));
}

TEST_CASE("closed form solves the equation of motion") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double k = 3.0 * u(rng);
        if (std::abs(k) < 1e-3)
            continue;
        const double w = 0.5 + std::abs(u(rng));
        const double c = 0.9 * u(rng);
        const double A = 3.0 * w * c / k;
        const double d = pi * u(rng);
        const LienardParams p(k, w);
        const double scale = std::max(1.0, std::abs(A)) * w * w;
        for (double t = 0.0; t < 2 * pi / w; t += 0.37) {
            CHECK(std::abs(exact_residual(t, p, {A, d})) < 1e-8 * scale / (1.0 - std::abs(c)));
            // analytic derivatives agree with the independent finite-difference oracle
            CHECK(std::abs(fd_residual(t, k, w, A, d)) < 1e-6 * scale / std::pow(1.0 - std::abs(c), 6));
            const auto kin = exact_kinematics(t, p, {A, d});
            CHECK(kin.x == doctest::Approx(orbit(t, k, w, A, d)).epsilon(1e-13));
        }
        // period 2 pi / omega
        for (double t = 0.0; t < 3.0; t += 0.5)
            CHECK(std::abs(exact_x(t + 2 * pi / w, p, {A, d}) - exact_x(t, p, {A, d})) <
                  1e-12 * std::max(1.0, std::abs(A)) / (1.0 - std::abs(c)));
    }
}

TEST_CASE("numerical integration tracks the closed form") {
    const LienardParams p(1.0, 1.0);
    const SolutionParams sol{1.0, 0.0};
    const auto traj = integrate_lienard(p.couplings(), exact_state(0.0, p, sol), 4 * pi, 801);
    double worst = 0.0;
    for (const auto& s : traj)
        worst = std::max(worst, std::abs(s.x - exact_x(s.t, p, sol)));
    CHECK(worst < 1e-7);
}

TEST_CASE("small-k limit approaches the harmonic oscillator") {
    const LienardParams p(1e-6, 1.0);
    const SolutionParams sol{1.0, 0.0};
    for (double t = 0.0; t < 10.0; t += 0.5)
        CHECK(std::abs(exact_x(t, p, sol) - std::sin(t)) < 1e-5);
}

TEST_CASE("fit_solution_params inverts exact_state") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double k = 0.2 + 2.0 * std::abs(u(rng));
        const double w = 0.5 + std::abs(u(rng));
        const double A = 3.0 * w / k * 0.8 * u(rng);
        if (std::abs(A) < 1e-3)
            continue;
        const double d = 0.9 * pi * u(rng);
        const LienardParams p(k, w);
        const auto s = exact_state(0.0, p, {A, d});
        const auto fit = fit_solution_params(p, s);
        const auto back = exact_state(0.0, p, fit);
        CHECK(std::abs(back.x - s.x) < 1e-10 * std::max(1.0, std::abs(A)));
        CHECK(std::abs(back.xdot - s.xdot) < 1e-10 * std::max(1.0, std::abs(A)));
    }
}

TEST_CASE("momentum on the orbit and the phase conic") {
    const LienardParams p(1.0, 1.0);
    const SolutionParams sol{1.0, 0.0};
    CHECK(exact_ptilde(pi / 2, p, sol) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(exact_ptilde(pi / 2, p, sol) == doctest::Approx(0.8660254).epsilon(1e-7));
    CHECK_THROWS_AS(ptilde_scale(LienardParams(1.0, 1.0), {3.0, 0.0}), DomainError);

    const double scale = ptilde_scale(p, sol);
    double worst = 0.0;
    for (double t = 0.0; t < 2 * pi; t += 0.01) {
        const double pbar = exact_ptilde(t, p, sol) * scale;
        worst = std::max(worst, std::abs(phase_conic_residual(exact_x(t, p, sol), pbar, p, sol)));
    }
    CHECK(worst < 1e-10);

    // at the turning point the conic in pbar has a double root
    const double xt = orbit_turning_point(p, sol);
    const double q = 1.0 + std::pow(p.k() * xt / (3.0 * p.omega()), 2);
    const double c = p.k() * sol.amplitude / (3.0 * p.omega());
    CHECK(std::abs(4.0 - 4.0 * q * (1.0 - c * c)) < 1e-14);

    // A -> 0: the conic collapses to (pbar - 1)^2 at x = 0
    const SolutionParams tiny{1e-9, 0.0};
    CHECK(std::abs(phase_conic_residual(0.0, 1.0, p, tiny)) < 1e-15);
}

TEST_CASE("first-order reformulation and the last multiplier") {
    const LienardParams p(1.0, 1.0);
    const SolutionParams sol{1.0, 0.3};
    const auto times = ode::uniform_times(0.0, 4 * pi, 2049);
    const auto traj = integrate_lienard(p.couplings(), exact_state(0.0, p, sol), times);
    for (const auto& branch : solve_eta_quadratic(p)) {
        CHECK(nonlocal_drift(p, branch, 2.0) == doctest::Approx(branch.eta() * (4.0 / 9.0 + 1.0)));
        const auto u0 = to_first_order(traj.front(), p, branch);
        CHECK(u0.u == doctest::Approx(traj.front().xdot - nonlocal_drift(p, branch, traj.front().x)));
        const auto flow = first_order_flow(u0, branch, p, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < flow.size(); ++i)
            worst = std::max(worst, std::abs(flow[i].x - traj[i].x));
        CHECK(worst < 1e-6);
        CHECK(jlm_residual(std::span<const FirstOrderState>(flow), branch, p) < 1e-6);
        CHECK(jlm_residual(std::span<const TrajectoryState>(traj), branch, p) < 1e-6);
        const auto m = multiplier_samples(flow, branch);
        CHECK(m.front().value == doctest::Approx(std::pow(u0.u, branch.eta())));
    }
    CHECK_THROWS_AS(last_multiplier(0.0, solve_eta_quadratic(p)[0]), DomainError);
    CHECK_THROWS_AS(to_first_order({0.0, 0.0, -5.0}, p, solve_eta_quadratic(p)[1]), DomainError);
}

TEST_CASE("the multiplier fails for a non-root eta") {
    const LienardParams p(1.0, 1.0);
    const auto bogus = EtaBranch::unchecked(-2.0, -2.0);
    const auto times = ode::uniform_times(0.0, 2 * pi, 1025);
    const auto traj = integrate_lienard(p.couplings(), exact_state(0.0, p, {1.0, 0.0}), times);
    CHECK(jlm_residual(std::span<const TrajectoryState>(traj), bogus, p) > 1e-3);
}
