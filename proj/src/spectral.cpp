#include "lienard/spectral.hpp"

#include "lienard/errors.hpp"
#include "lienard/mechanics.hpp"
#include "lienard/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>

namespace lienard {

RadialGrid::RadialGrid(double y_min, double y_max, std::size_t n) : y_min_(y_min), y_max_(y_max), n_(n) {
    if (!(y_min > 0.0) || !(y_max > y_min) || !std::isfinite(y_max))
        throw DomainError("radial grid needs 0 < y_min < y_max");
    if (n < 100)
        throw DomainError("radial grid needs at least 100 nodes");
    h_ = (y_max - y_min) / static_cast<double>(n - 1);
}

double RadialGrid::node(std::size_t i) const {
    return i + 1 == n_ ? y_max_ : y_min_ + h_ * static_cast<double>(i);
}

std::vector<double> RadialGrid::interior() const {
    std::vector<double> y(n_ - 2);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = node(i + 1);
    return y;
}

double effective_potential(double y, const IsotonicProblem& q) {
    if (!(y > 0.0))
        throw DomainError("effective potential is defined for y > 0");
    return q.centrifugal() / (y * y) + q.omega * q.omega * y * y;
}

specfun::Tridiagonal discretize(const IsotonicProblem& q, const RadialGrid& grid,
                                InnerBoundary inner) {
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const std::size_t m = grid.size() - 2;
    std::vector<double> diag(m);
    std::vector<double> off(m - 1, -inv_h2);
    const auto count = static_cast<long long>(m);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(i);
        diag[j] = 2.0 * inv_h2 + effective_potential(grid.node(j + 1), q);
    }
    if (inner == InnerBoundary::regular) {
        // Ghost value at y_min from phi ~ y^(ell+1).
        const double ratio = std::pow(grid.node(0) / grid.node(1), q.ell + 1.0);
        diag[0] -= ratio * inv_h2;
    }
    return {std::move(diag), std::move(off)};
}

double analytic_energy(std::size_t n, const IsotonicProblem& q) {
    return (4.0 * static_cast<double>(n) + 2.0 * q.ell + 3.0) * q.omega;
}

double alternative_energy(std::size_t n, const IsotonicProblem& q) {
    return (static_cast<double>(n) + 0.5 * (q.ell + 1.5)) * q.omega;
}

namespace {

void check_levels(std::size_t levels) {
    if (levels == 0 || levels > kMaxLevels) {
        std::ostringstream os;
        os << "levels must be in 1.." << kMaxLevels << ", got " << levels;
        throw DomainError(os.str());
    }
}

void check_problem(const IsotonicProblem& q) {
    if (!(q.omega > 0.0))
        throw DomainError("omega must be positive");
    if (!(q.ell > -1.5))
        throw DomainError("ell must exceed -3/2 for normalizable states");
}

void check_resolution(const IsotonicProblem& q, const RadialGrid& grid, std::size_t levels,
                      const SpectrumOptions& opt) {
    const double top = analytic_energy(levels - 1, q);
    const double h = grid.spacing();
    const double estimate = h * h * top / 12.0;
    if (estimate > opt.max_estimated_error) {
        std::ostringstream os;
        os << "grid too coarse: estimated relative error " << estimate << " for level "
           << levels - 1 << " exceeds " << opt.max_estimated_error;
        throw NumericalError(os.str());
    }
    // WKB decay action of the top level between its outer turning point and y_max.
    const double c = q.centrifugal();
    const double disc = std::max(0.0, top * top - 4.0 * q.omega * q.omega * c);
    const double turning = std::sqrt((top + std::sqrt(disc)) / (2.0 * q.omega * q.omega));
    double action = 0.0;
    if (grid.y_max() > turning) {
        constexpr int steps = 400;
        const double dy = (grid.y_max() - turning) / steps;
        for (int i = 0; i < steps; ++i) {
            const double y = turning + (i + 0.5) * dy;
            action += std::sqrt(std::max(0.0, effective_potential(y, q) - top)) * dy;
        }
    }
    if (action < opt.min_tail_action) {
        std::ostringstream os;
        os << "grid too short: level " << levels - 1 << " decays by only exp(-" << action
           << ") between its turning point " << turning << " and y_max = " << grid.y_max()
           << " (need exp(-" << opt.min_tail_action << "))";
        throw NumericalError(os.str());
    }
}

} // namespace

SpectrumResult compute_spectrum(const IsotonicProblem& q, const RadialGrid& grid,
                                std::size_t levels, const SpectrumOptions& opt) {
    check_levels(levels);
    check_problem(q);
    check_resolution(q, grid, levels, opt);
    const auto numeric = specfun::eig_tridiagonal(discretize(q, grid, opt.inner), levels);
    SpectrumResult out{q, grid.y_min(), grid.y_max(), grid.size(), opt.inner, {}};
    for (std::size_t n = 0; n < levels; ++n) {
        const double exact = analytic_energy(n, q);
        out.levels.push_back({n, numeric[n], exact, alternative_energy(n, q),
                              std::abs(numeric[n] - exact) / std::abs(exact)});
    }
    return out;
}

std::vector<SpectrumResult> compute_spectra(std::span<const IsotonicProblem> problems,
                                            const RadialGrid& grid, std::size_t levels,
                                            const SpectrumOptions& opt) {
    std::vector<SpectrumResult> out(problems.size());
    const auto count = static_cast<long long>(problems.size());
    // Exceptions cannot cross the parallel region; collect the first one.
    std::vector<std::exception_ptr> errors(problems.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(i);
        try {
            out[j] = compute_spectrum(problems[j], grid, levels, opt);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

RefinementStudy refinement_study(const IsotonicProblem& q, const RadialGrid& grid,
                                 std::size_t levels, InnerBoundary inner) {
    check_levels(levels);
    check_problem(q);
    const auto coarse = specfun::eig_tridiagonal(discretize(q, grid, inner), levels);
    const auto fine = specfun::eig_tridiagonal(discretize(q, grid.refined(), inner), levels);
    RefinementStudy out;
    for (std::size_t n = 0; n < levels; ++n) {
        const double exact = analytic_energy(n, q);
        const double ec = std::abs(coarse[n] - exact);
        const double ef = std::abs(fine[n] - exact);
        out.coarse_error.push_back(ec);
        out.fine_error.push_back(ef);
        out.order.push_back(std::log2(ec / ef));
        out.extrapolated.push_back((4.0 * fine[n] - coarse[n]) / 3.0);
    }
    return out;
}

double isotonic_profile(double y, std::size_t n, const IsotonicProblem& q) {
    const double z = q.omega * y * y;
    return std::pow(y, q.ell + 1.0) * std::exp(-0.5 * z) *
           specfun::kummer_1f1(-static_cast<double>(n), q.ell + 1.5, z);
}

double analytic_norm_constant(std::size_t n, const IsotonicProblem& q) {
    // 1F1(-n; alpha+1; z) = L_n^alpha(z) / binom(n+alpha, n) with alpha = ell + 1/2, and
    // int_0^inf z^alpha e^-z (L_n^alpha)^2 dz = Gamma(n+alpha+1)/n!.
    const double alpha = q.ell + 0.5;
    const double nn = static_cast<double>(n);
    const double log_binom = std::lgamma(nn + alpha + 1.0) - std::lgamma(nn + 1.0) - std::lgamma(alpha + 1.0);
    const double log_integral = -(q.ell + 1.5) * std::log(q.omega) - std::log(2.0) +
                                std::lgamma(nn + alpha + 1.0) - std::lgamma(nn + 1.0) - 2.0 * log_binom;
    return std::exp(-0.5 * log_integral);
}

double analytic_phi(double y, std::size_t n, const IsotonicProblem& q) {
    return analytic_norm_constant(n, q) * isotonic_profile(y, n, q);
}

namespace {

// Grid integral plus the head [0, y_0], where phi ~ y^(ell+1).
double normalize_on(std::vector<double>& phi, std::span<const double> y, double ell) {
    std::vector<double> density(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        density[i] = phi[i] * phi[i];
    const double head = density.front() * y.front() / (2.0 * ell + 3.0);
    const double scale = 1.0 / std::sqrt(specfun::integrate_density(density, y) + head);
    for (double& v : phi)
        v *= scale;
    return scale;
}

std::vector<double> divide_sqrt(std::span<const double> phi, std::span<const double> y) {
    std::vector<double> psi(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        psi[i] = phi[i] / std::sqrt(y[i]);
    return psi;
}

} // namespace

WavefunctionResult analytic_wavefunction(std::size_t n, const IsotonicProblem& q,
                                         const RadialGrid& grid) {
    check_levels(n + 1);
    check_problem(q);
    WavefunctionResult out;
    out.y = grid.interior();
    out.phi.resize(out.y.size());
    for (std::size_t i = 0; i < out.y.size(); ++i)
        out.phi[i] = isotonic_profile(out.y[i], n, q);
    out.norm_constant = normalize_on(out.phi, out.y, q.ell);
    out.psi = divide_sqrt(out.phi, out.y);
    out.energy = analytic_energy(n, q);
    return out;
}

WavefunctionResult numeric_wavefunction(std::size_t n, const IsotonicProblem& q,
                                        const RadialGrid& grid, InnerBoundary inner) {
    check_levels(n + 1);
    check_problem(q);
    const auto t = discretize(q, grid, inner);
    WavefunctionResult out;
    out.energy = specfun::bisect_eigenvalue(t, n);
    out.y = grid.interior();
    out.phi = specfun::inverse_iteration(t, out.energy);
    out.norm_constant = normalize_on(out.phi, out.y, q.ell);
    out.psi = divide_sqrt(out.phi, out.y);
    return out;
}

double overlap(std::span<const double> a, std::span<const double> b, std::span<const double> y) {
    if (a.size() != b.size() || a.size() != y.size())
        throw DomainError("overlap: size mismatch");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        prod[i] = a[i] * b[i];
    return specfun::integrate_density(prod, y);
}

std::size_t count_nodes(std::span<const double> phi) {
    double peak = 0.0;
    for (double v : phi)
        peak = std::max(peak, std::abs(v));
    const double floor = 1e-8 * peak;
    std::size_t nodes = 0;
    int last_sign = 0;
    for (double v : phi) {
        if (std::abs(v) <= floor)
            continue;
        const int sign = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign)
            ++nodes;
        last_sign = sign;
    }
    return nodes;
}

double y_of_ptilde(double ptilde, double a) {
    if (!(ptilde > 0.0) || !(a > 0.0))
        throw DomainError("y(ptilde) needs ptilde > 0 and a > 0");
    return std::sqrt(4.0 * ptilde / (3.0 * a));
}

double momentum_density_factor(double a) {
    if (!(a > 0.0))
        throw DomainError("momentum representation needs a > 0 (k > 0)");
    return std::sqrt(2.0 / (3.0 * a));
}

double radial_form_residual(std::span<const double> phi, double energy, const IsotonicProblem& q,
                            const RadialGrid& grid, double lo, double hi) {
    const auto y = grid.interior();
    if (phi.size() != y.size())
        throw DomainError("radial_form_residual: phi must live on the interior nodes");
    const auto psi = divide_sqrt(phi, y);
    const double h = grid.spacing();
    const double barrier = (q.ell + 0.5) * (q.ell + 0.5);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] < lo || y[i] > hi)
            continue;
        const double d1 = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
        const double d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
        const double v = barrier / (y[i] * y[i]) + q.omega * q.omega * y[i] * y[i];
        const double r = -(d2 + d1 / y[i]) + (v - energy) * psi[i];
        num += r * r;
        den += energy * energy * psi[i] * psi[i];
    }
    if (den == 0.0)
        throw DomainError("radial_form_residual: empty window");
    return std::sqrt(num / den);
}

VonRoosOperator VonRoosOperator::isotonic(const LienardParams& p, const AmbiguityParams& amb) {
    const MassPotential mp(p);
    return {-1.5,
            amb,
            [mp](double s) { return mp.mass(s); },
            [mp](double s) { return mp.mass_d1(s); },
            [mp](double s) { return mp.mass_d2(s); },
            [mp](double s) { return mp.potential(s); }};
}

std::vector<double> VonRoosOperator::apply(std::span<const double> psi,
                                           std::span<const double> grid) const {
    const std::size_t n = grid.size();
    if (psi.size() != n || n < 8)
        throw DomainError("von Roos operator needs psi on a uniform grid of >= 8 nodes");
    const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    const double alpha = ambiguity.alpha();
    const double beta = ambiguity.beta();
    const double kin = (eta + 1.0) * (eta + 1.0);

    std::vector<double> out;
    out.reserve(n - 6);
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double d1 = (-psi[i - 3] + 9.0 * psi[i - 2] - 45.0 * psi[i - 1] + 45.0 * psi[i + 1] -
                           9.0 * psi[i + 2] + psi[i + 3]) / (60.0 * h);
        const double d2 = (2.0 * psi[i - 3] - 27.0 * psi[i - 2] + 270.0 * psi[i - 1] - 490.0 * psi[i] +
                           270.0 * psi[i + 1] - 27.0 * psi[i + 2] + 2.0 * psi[i + 3]) / (180.0 * h * h);
        const double s = grid[i];
        const double m = mass(s);
        const double r1 = mass_d1(s) / m;
        const double r2 = mass_d2(s) / m;
        const double bracket = d2 - r1 * d1 + 0.5 * (beta + 1.0) * (2.0 * r1 * r1 - r2) * psi[i] +
                               alpha * (alpha + beta + 1.0) * r1 * r1 * psi[i];
        out.push_back(-kin / (2.0 * m) * bracket + potential(s) * psi[i]);
    }
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo))
        throw DomainError("uniform grid needs lo < hi and n >= 2");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = hi;
    return g;
}

double operator_residual(const VonRoosOperator& op, std::span<const double> psi,
                         std::span<const double> grid, double energy) {
    const auto hpsi = op.apply(psi, grid);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < hpsi.size(); ++j) {
        const double v = psi[j + 3];
        num += (hpsi[j] - energy * v) * (hpsi[j] - energy * v);
        den += energy * energy * v * v;
    }
    return std::sqrt(num / den);
}

double vonroos_residual(std::size_t n, const QuantumSetup& setup,
                        std::span<const double> ptilde_grid) {
    const auto q = IsotonicProblem::from_setup(setup);
    check_levels(n + 1);
    check_problem(q);
    const double a = setup.params().a();
    std::vector<double> psi(ptilde_grid.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double y = y_of_ptilde(ptilde_grid[i], a);
        psi[i] = analytic_phi(y, n, q) / std::sqrt(y);
    }
    const auto op = VonRoosOperator::isotonic(setup.params(), setup.ambiguity());
    const double energy = analytic_energy(n, q) * (op.eta + 1.0) * (op.eta + 1.0);
    return operator_residual(op, psi, ptilde_grid, energy);
}

std::vector<double> default_ptilde_grid(const QuantumSetup& setup) {
    const double a = setup.params().a();
    const double scale = 1.0 / std::sqrt(setup.omega());
    return uniform_grid(ptilde_of_y(0.3 * scale, a), ptilde_of_y(6.0 * scale, a), 8001);
}

} // namespace lienard
