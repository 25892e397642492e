#include "lienard/mechanics.hpp"

#include "lienard/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lienard {

double positive_pow(double base, double exponent, const char* what) {
    if (!(base > 0.0) || !std::isfinite(base)) {
        std::ostringstream os;
        os << what << " must be positive for a real fractional power, got " << base;
        throw DomainError(os.str());
    }
    return std::pow(base, exponent);
}

double lagrangian_base(double x, double xdot, const EtaBranch& branch, const LienardParams& p) {
    return xdot - branch.eta() * p.ratio(x);
}

double lagrangian(double x, double xdot, const EtaBranch& branch, const LienardParams& p) {
    const double eta = branch.eta();
    const double base = lagrangian_base(x, xdot, branch, p);
    return positive_pow(base, eta + 2.0, "x' - eta g/f") / ((eta + 1.0) * (eta + 2.0));
}

double multiplier_of_state(double x, double xdot, const EtaBranch& branch, const LienardParams& p) {
    return positive_pow(lagrangian_base(x, xdot, branch, p), branch.eta(), "x' - eta g/f");
}

double conjugate_momentum(double x, double xdot, const EtaBranch& branch, const LienardParams& p) {
    const double eta = branch.eta();
    const double base = lagrangian_base(x, xdot, branch, p);
    return positive_pow(base, eta + 1.0, "x' - eta g/f") / (eta + 1.0);
}

double velocity_from_momentum(double x, double p, const EtaBranch& branch, const LienardParams& lp) {
    const double eta = branch.eta();
    return eta * lp.ratio(x) + positive_pow(scaled_momentum(p, branch), 1.0 / (eta + 1.0), "ptilde");
}

PhasePoint to_phase_point(const TrajectoryState& s, const EtaBranch& branch, const LienardParams& p) {
    return {s.x, conjugate_momentum(s.x, s.xdot, branch, p)};
}

double hamiltonian_general(double x, double ptilde, const EtaBranch& branch, const LienardParams& p) {
    const double eta = branch.eta();
    const double kinetic = positive_pow(ptilde, (eta + 2.0) / (eta + 1.0), "ptilde") / (eta + 2.0);
    return kinetic + eta / (eta + 1.0) * ptilde * p.ratio(x);
}

double hamiltonian_oscillator(double x, double ptilde, const LienardParams& p) {
    const double a = p.a();
    const double b = p.b();
    const double shifted = std::sqrt(positive_pow(ptilde, 1.0, "ptilde")) - 1.0 / (3.0 * b);
    return x * x / (2.0 / (3.0 * a * ptilde)) + 1.5 * b * shifted * shifted - 1.0 / (6.0 * b);
}

double hamiltonian_isotonic(double x, double ptilde, const LienardParams& p) {
    if (!(ptilde > 0.0))
        throw DomainError("the isotonic Hamiltonian needs ptilde > 0");
    return 3.0 * p.a() * ptilde * x * x + 3.0 * p.b() * ptilde + 2.0 / ptilde;
}

double MassPotential::potential_minimizer() const {
    if (!(b_ > 0.0))
        throw DomainError("the potential has a minimum on ptilde > 0 only for b > 0");
    return std::sqrt(2.0 / (3.0 * b_));
}

double MassPotential::potential_minimum() const {
    if (!(b_ > 0.0))
        throw DomainError("the potential has a minimum on ptilde > 0 only for b > 0");
    return 2.0 * std::sqrt(6.0 * b_);
}

double hamiltonian_canonical(const PhasePoint& z, const EtaBranch& branch, const LienardParams& p) {
    return hamiltonian_general(z.x, scaled_momentum(z.p, branch), branch, p);
}

HamiltonGradient hamiltonian_gradient(const PhasePoint& z, const EtaBranch& branch,
                                      const LienardParams& p) {
    const double eta = branch.eta();
    const double ptilde = scaled_momentum(z.p, branch);
    return {eta * z.p * p.ratio_derivative(z.x),
            positive_pow(ptilde, 1.0 / (eta + 1.0), "ptilde") + eta * p.ratio(z.x)};
}

std::vector<PhaseSample> hamilton_flow(const PhasePoint& initial, double t0,
                                       const EtaBranch& branch, const LienardParams& p,
                                       std::span<const double> times, const ode::Tolerances& tol) {
    if (!(scaled_momentum(initial.p, branch) > 0.0))
        throw DomainError("initial phase point must have ptilde = (eta+1) p > 0");
    const double eta = branch.eta();
    const auto rhs = [&](double, const ode::Vec<2>& y) -> ode::Vec<2> {
        const double ptilde = (eta + 1.0) * y[1];
        if (!(ptilde > 0.0)) {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            return {nan, nan};
        }
        const double dx = eta * y[1] * p.ratio_derivative(y[0]);
        const double dp = std::pow(ptilde, 1.0 / (eta + 1.0)) + eta * p.ratio(y[0]);
        return {dp, -dx};
    };
    const auto samples = ode::integrate<2>(rhs, t0, {initial.x, initial.p}, times, tol);
    std::vector<PhaseSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (!(scaled_momentum(s.y[1], branch) > 0.0)) {
            std::ostringstream os;
            os << "Hamilton flow left ptilde > 0 at t = " << s.t;
            throw NumericalError(os.str());
        }
        out.push_back({s.t, s.y[0], s.y[1]});
    }
    return out;
}

} // namespace lienard
