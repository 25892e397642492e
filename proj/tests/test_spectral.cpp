#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/errors.hpp"
#include "lienard/specfun.hpp"
#include "lienard/spectral.hpp"

#include <cmath>
#include <vector>

using namespace lienard;

namespace {
const QuantumSetup ground_setup(AmbiguityParams::minimal(), LienardParams(384.0, 1.0));
const IsotonicProblem s_wave = IsotonicProblem::from_setup(ground_setup);
} // namespace

TEST_CASE("effective potential") {
    CHECK(effective_potential(1.0, {0.0, 1.0}) == 1.0);
    CHECK(effective_potential(1.0, {1.0, 1.0}) == 3.0);
    CHECK(effective_potential(2.0, {0.5, 2.0}) == doctest::Approx(0.75 / 4.0 + 16.0));
    CHECK_THROWS_AS(effective_potential(0.0, {1.0, 1.0}), DomainError);

    const IsotonicProblem q{2.0, 1.5};
    const double ystar = std::pow(q.centrifugal() / (q.omega * q.omega), 0.25);
    const double vmin = 2.0 * q.omega * std::sqrt(q.centrifugal());
    CHECK(effective_potential(ystar, q) == doctest::Approx(vmin).epsilon(1e-14));
    CHECK(effective_potential(ystar * 1.01, q) > vmin);
    CHECK(effective_potential(ystar * 0.99, q) > vmin);
}

TEST_CASE("setup values") {
    CHECK(s_wave.ell == 0.0);
    CHECK(s_wave.omega == 1.0);
    CHECK(ground_setup.epsilon() == 0.0);
    CHECK(analytic_energy(0, s_wave) == 3.0);
    CHECK(analytic_energy(2, s_wave) == 11.0);
    CHECK(alternative_energy(0, s_wave) == 0.75);
    CHECK(unscaled_energy(3.0) == 0.75);
    CHECK(analytic_energy(1, {0.5, 2.0}) == doctest::Approx(2.0 * (4.0 + 1.0 + 3.0)));
}

TEST_CASE("grid and discretization") {
    const RadialGrid g(1e-3, 12.0, 6000);
    CHECK(g.node(0) == 1e-3);
    CHECK(g.node(5999) == 12.0);
    CHECK(g.spacing() == doctest::Approx((12.0 - 1e-3) / 5999.0).epsilon(1e-15));
    CHECK(g.interior().size() == 5998);
    CHECK(g.refined().size() == 11999);
    CHECK(g.refined().spacing() == doctest::Approx(g.spacing() / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(RadialGrid(0.0, 1.0, 200), DomainError);
    CHECK_THROWS_AS(RadialGrid(1.0, 0.5, 200), DomainError);
    CHECK_THROWS_AS(RadialGrid(1e-3, 1.0, 50), DomainError);

    const IsotonicProblem q{1.0, 1.0};
    const auto d = discretize(q, g, InnerBoundary::dirichlet);
    const auto y = g.interior();
    const double h2 = g.spacing() * g.spacing();
    REQUIRE(d.size() == y.size());
    for (std::size_t i = 0; i < y.size(); i += 499)
        CHECK(d.diag()[i] == doctest::Approx(2.0 / h2 + effective_potential(y[i], q)).epsilon(1e-15));
    for (std::size_t i = 0; i < d.off().size(); i += 499)
        CHECK(d.off()[i] == doctest::Approx(-1.0 / h2).epsilon(1e-15));

    // the regular closure only touches the first row
    const auto r = discretize(q, g, InnerBoundary::regular);
    CHECK(r.diag()[0] == doctest::Approx(d.diag()[0] - std::pow(g.node(0) / g.node(1), 2.0) / h2));
    for (std::size_t i = 1; i < y.size(); i += 499)
        CHECK(r.diag()[i] == d.diag()[i]);
}

TEST_CASE("free particle in a box") {
    // omega -> tiny and ell = 0 with Dirichlet walls: (m pi / L)^2 up to O(h^2)
    const IsotonicProblem q{0.0, 1e-9};
    const RadialGrid g(1.0, 2.0, 2001);
    const auto ev = specfun::eig_tridiagonal(discretize(q, g, InnerBoundary::dirichlet), 3);
    for (int m = 1; m <= 3; ++m) {
        const double exact = m * m * M_PI * M_PI;
        CHECK(std::abs(ev[m - 1] - exact) / exact < 1e-5);
    }
}

TEST_CASE("s-wave spectrum against the closed form") {
    const auto res = compute_spectrum(s_wave, RadialGrid::standard(), 6);
    REQUIRE(res.levels.size() == 6);
    for (const auto& l : res.levels) {
        CHECK(l.rel_error < 1e-4);
        CHECK(l.analytic == 4.0 * l.n + 3.0);
        // the quarter-scaled alternative is off by far more than the resolution
        CHECK(std::abs(l.numeric - l.alternative) / l.alternative > 1.0);
    }
    for (std::size_t i = 1; i < res.levels.size(); ++i)
        CHECK(res.levels[i].numeric - res.levels[i - 1].numeric == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("spectrum across ell and omega") {
    for (const double k : {1.0, 7.0, 96.0}) {
        for (const double w : {1.0, 1.5}) {
            const QuantumSetup s(AmbiguityParams::minimal(), LienardParams(k, w));
            // high ell pushes the outer turning point past the standard y_max
            const RadialGrid grid(1e-3, s.ell() > 5.0 ? 16.0 : 12.0, 8000);
            const auto res = compute_spectrum(IsotonicProblem::from_setup(s), grid, 6);
            for (const auto& l : res.levels)
                CHECK(l.rel_error < 1e-4);
        }
    }
    const QuantumSetup s(AmbiguityParams::from_epsilon(0.7), LienardParams(50.0, 1.0));
    for (const auto& l : compute_spectrum(IsotonicProblem::from_setup(s), RadialGrid::standard(), 6).levels)
        CHECK(l.rel_error < 1e-4);
}

TEST_CASE("second-order convergence and Richardson extrapolation") {
    const auto study = refinement_study(s_wave, RadialGrid::standard(), 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(study.order[i] - 2.0) < 0.1);
        CHECK(study.fine_error[i] < study.coarse_error[i]);
    }
    for (std::size_t i = 1; i < 6; ++i) {
        const double gap = study.extrapolated[i] - study.extrapolated[i - 1];
        CHECK(std::abs(gap - 4.0) / 4.0 < 1e-3);
    }
}

TEST_CASE("batch solve equals the loop") {
    std::vector<IsotonicProblem> qs{{0.0, 1.0}, {0.5, 1.0}, {2.0, 1.5}, {9.29795897113271, 1.0}};
    const RadialGrid grid(1e-3, 16.0, 8000);
    const auto batch = compute_spectra(qs, grid, 5);
    REQUIRE(batch.size() == qs.size());
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const auto one = compute_spectrum(qs[j], grid, 5);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(batch[j].levels[i].numeric == one.levels[i].numeric);
    }
}

TEST_CASE("truncation raises the energies") {
    // Dirichlet walls close in: energies lie above the half-line values and fall as y_max grows.
    double previous = 1e300;
    for (const double ymax : {2.5, 3.0, 3.5}) {
        SpectrumOptions opt;
        opt.inner = InnerBoundary::dirichlet;
        opt.min_tail_action = 0.0;
        const auto res = compute_spectrum(s_wave, RadialGrid(1e-3, ymax, 4000), 1, opt);
        CHECK(res.levels[0].numeric > 3.0);
        CHECK(res.levels[0].numeric < previous);
        previous = res.levels[0].numeric;
    }
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(compute_spectrum(s_wave, RadialGrid::standard(), 11), DomainError);
    CHECK_THROWS_AS(compute_spectrum(s_wave, RadialGrid(1e-3, 12.0, 200), 6), NumericalError);
    CHECK_THROWS_AS(compute_spectrum(s_wave, RadialGrid(1e-3, 5.0, 6000), 6), NumericalError);
    CHECK_NOTHROW(compute_spectrum(s_wave, RadialGrid::standard(), 10));
    CHECK_NOTHROW(compute_spectrum({9.29795897113271, 1.0}, RadialGrid::standard(), 10));
    CHECK_THROWS_AS(analytic_wavefunction(11, s_wave, RadialGrid::standard()), DomainError);
}

TEST_CASE("eigenfunctions") {
    for (const IsotonicProblem q : {s_wave, IsotonicProblem{9.29795897113271, 1.0}, IsotonicProblem{0.5, 1.5}}) {
        const RadialGrid grid(1e-3, q.ell > 5.0 ? 16.0 : 12.0, 8000);
        for (std::size_t n = 0; n <= 3; ++n) {
            const auto a = analytic_wavefunction(n, q, grid);
            const auto b = numeric_wavefunction(n, q, grid);
            CHECK(std::abs(overlap(a.phi, b.phi, a.y)) > 1.0 - 1e-6);
            CHECK(overlap(a.phi, a.phi, a.y) == doctest::Approx(1.0).epsilon(1e-7));
            CHECK(count_nodes(a.phi) == n);
            CHECK(count_nodes(b.phi) == n);
            CHECK(a.norm_constant == doctest::Approx(analytic_norm_constant(n, q)).epsilon(1e-8));
            CHECK(a.energy == analytic_energy(n, q));
            CHECK(radial_form_residual(a.phi, a.energy, q, grid, 0.05, 8.0) < 1e-4);
            for (std::size_t m = 0; m < n; ++m)
                CHECK(std::abs(overlap(a.phi, analytic_wavefunction(m, q, grid).phi, a.y)) < 1e-7);
        }
    }
    // closed-form N_0 for ell = 0, omega = 1: 2 / pi^(1/4)
    CHECK(analytic_norm_constant(0, s_wave) == doctest::Approx(2.0 / std::pow(M_PI, 0.25)).epsilon(1e-14));
}

TEST_CASE("momentum-space density") {
    const double a = 1.0 / 9.0;
    CHECK(y_of_ptilde(ptilde_of_y(1.7, a), a) == doctest::Approx(1.7).epsilon(1e-15));
    CHECK(momentum_density_factor(a) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));

    const auto grid = RadialGrid::standard();
    const auto wf = analytic_wavefunction(1, s_wave, grid);
    std::vector<double> pt, dens;
    for (std::size_t i = 0; i < wf.y.size(); ++i) {
        pt.push_back(ptilde_of_y(wf.y[i], a));
        const double psi = momentum_density_factor(a) * wf.psi[i];
        dens.push_back(psi * psi);
    }
    const double head = dens.front() * pt.front() / (s_wave.ell + 1.5);
    CHECK(specfun::integrate_density(dens, pt) + head == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("variable-mass operator annihilates the closed form") {
    const LienardParams p(384.0, 1.0);
    const QuantumSetup s(AmbiguityParams::minimal(), p);
    const auto pg = default_ptilde_grid(s);
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(vonroos_residual(n, s, pg) < 1e-4);

    const QuantumSetup s2(AmbiguityParams::from_epsilon(0.4), LienardParams(20.0, 1.2));
    const auto pg2 = default_ptilde_grid(s2);
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(vonroos_residual(n, s2, pg2) < 1e-4);

    std::vector<double> bad{-0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    CHECK_THROWS_AS(vonroos_residual(0, s, bad), DomainError);
}

TEST_CASE("operator depends on the ordering only through epsilon") {
    const LienardParams p(30.0, 1.0);
    const auto op1 = VonRoosOperator::isotonic(p, AmbiguityParams(0.0, -1.0, 0.0));
    const auto op2 = VonRoosOperator::isotonic(p, AmbiguityParams(1.0, -2.0, 0.0));
    const auto op3 = VonRoosOperator::isotonic(p, AmbiguityParams(0.7, -1.7, 0.0));
    const auto grid = uniform_grid(0.2, 3.0, 401);
    std::vector<double> psi;
    for (const double x : grid)
        psi.push_back(x * std::exp(-x));
    const auto h1 = op1.apply(psi, grid);
    const auto h2 = op2.apply(psi, grid);
    const auto h3 = op3.apply(psi, grid);
    double d12 = 0.0, d13 = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        d12 = std::max(d12, std::abs(h1[i] - h2[i]));
        d13 = std::max(d13, std::abs(h1[i] - h3[i]));
        scale = std::max(scale, std::abs(h1[i]));
    }
    CHECK(d12 < 1e-12 * scale);
    CHECK(d13 < 1e-12 * scale);
    const auto op4 = VonRoosOperator::isotonic(p, AmbiguityParams(0.5, -1.0, -0.5));
    const auto h4 = op4.apply(psi, grid);
    double d14 = 0.0;
    for (std::size_t i = 0; i < h1.size(); ++i)
        d14 = std::max(d14, std::abs(h1[i] - h4[i]));
    CHECK(d14 > 1e-3 * scale);
}

TEST_CASE("constant mass reduces to the harmonic oscillator") {
    // -(1/2) psi'' + x^2/2 psi with eta = 0; ground state exp(-x^2/2) at E = 1/2
    VonRoosOperator op{0.0, AmbiguityParams::minimal(), [](double) { return 1.0; }, [](double) { return 0.0; },
                       [](double) { return 0.0; }, [](double x) { return 0.5 * x * x; }};
    const auto grid = uniform_grid(-6.0, 6.0, 2001);
    std::vector<double> psi;
    for (const double x : grid)
        psi.push_back(std::exp(-0.5 * x * x));
    CHECK(operator_residual(op, psi, grid, 0.5) < 1e-6);
    CHECK(operator_residual(op, psi, grid, 0.6) > 1e-2);
}
