#pragma once

// Lagrangian and Hamiltonian descriptions generated by the last multiplier
// M = (x' - eta g/f)^eta, for either root eta of the multiplier quadratic.
//
// Canonical coordinates are (x, p). The scaled momentum is ptilde = (eta+1) p;
// on both branches eta + 1 < 0, so the physical half-line ptilde > 0 means p < 0.

#include "lienard/classical.hpp"
#include "lienard/model.hpp"
#include "lienard/ode.hpp"

#include <span>
#include <vector>

namespace lienard {

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

inline double scaled_momentum(double p, const EtaBranch& branch) { return (branch.eta() + 1.0) * p; }

/// base^exponent for a strictly positive base; DomainError otherwise.
double positive_pow(double base, double exponent, const char* what);

/// x' - eta g/f, the base of every fractional power below.
double lagrangian_base(double x, double xdot, const EtaBranch& branch, const LienardParams& p);

/// (x' - eta g/f)^(eta+2) / ((eta+1)(eta+2)); the gauge term dG/dt is dropped.
double lagrangian(double x, double xdot, const EtaBranch& branch, const LienardParams& p);

/// M = d^2L/dx'^2 = (x' - eta g/f)^eta.
double multiplier_of_state(double x, double xdot, const EtaBranch& branch, const LienardParams& p);

/// p = dL/dx' = (x' - eta g/f)^(eta+1) / (eta+1).
double conjugate_momentum(double x, double xdot, const EtaBranch& branch, const LienardParams& p);

/// Inverse of conjugate_momentum: x' = eta g/f + ((eta+1) p)^(1/(eta+1)).
double velocity_from_momentum(double x, double p, const EtaBranch& branch, const LienardParams& lp);

PhasePoint to_phase_point(const TrajectoryState& s, const EtaBranch& branch, const LienardParams& p);

/// ptilde^((eta+2)/(eta+1)) / (eta+2) + eta/(eta+1) ptilde g/f.
double hamiltonian_general(double x, double ptilde, const EtaBranch& branch, const LienardParams& p);

/// The eta = -3 member written as
///     x^2 / (2 (3 a ptilde)^-1) + (3/2) b (sqrt(ptilde) - 1/(3b))^2 - 1/(6b).
double hamiltonian_oscillator(double x, double ptilde, const LienardParams& p);

/// The eta = -3/2 member: (3 a ptilde) x^2 + 3 b ptilde + 2/ptilde. DomainError for ptilde <= 0.
double hamiltonian_isotonic(double x, double ptilde, const LienardParams& p);

/// Momentum-dependent mass and potential of the isotonic Hamiltonian,
/// H = x^2 / (2 m(ptilde)) + U(ptilde).
class MassPotential {
public:
    explicit MassPotential(const LienardParams& p) : a_(p.a()), b_(p.b()) {}

    /// (6 a ptilde)^-1
    double mass(double ptilde) const { return 1.0 / (6.0 * a_ * ptilde); }
    double mass_d1(double ptilde) const { return -1.0 / (6.0 * a_ * ptilde * ptilde); }
    double mass_d2(double ptilde) const { return 2.0 / (6.0 * a_ * ptilde * ptilde * ptilde); }
    /// 3 b ptilde + 2/ptilde
    double potential(double ptilde) const { return 3.0 * b_ * ptilde + 2.0 / ptilde; }

    /// Stationary point sqrt(2/(3b)) of the potential (a minimum for b > 0).
    double potential_minimizer() const;
    /// 2 sqrt(6 b)
    double potential_minimum() const;

private:
    double a_;
    double b_;
};

struct HamiltonGradient {
    double dx;
    double dp;
};

/// H(x, p) in canonical momentum.
double hamiltonian_canonical(const PhasePoint& z, const EtaBranch& branch, const LienardParams& p);

/// Analytic (dH/dx, dH/dp).
HamiltonGradient hamiltonian_gradient(const PhasePoint& z, const EtaBranch& branch,
                                      const LienardParams& p);

struct PhaseSample {
    double t;
    double x;
    double p;
};

/// Integrates x' = dH/dp, p' = -dH/dx. Trial stages that leave ptilde > 0 are
/// rejected by the step controller; a sample outside the half-line is a NumericalError.
std::vector<PhaseSample> hamilton_flow(const PhasePoint& initial, double t0,
                                       const EtaBranch& branch, const LienardParams& p,
                                       std::span<const double> times,
                                       const ode::Tolerances& tol = {});

} // namespace lienard
