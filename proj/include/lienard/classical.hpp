#pragma once

// Classical dynamics: the equation of motion, its closed-form periodic orbit,
// the nonlocal first-order reformulation and the Jacobi last multiplier.

#include "lienard/model.hpp"
#include "lienard/ode.hpp"

#include <span>
#include <vector>

namespace lienard {

struct TrajectoryState {
    double t = 0.0;
    double x = 0.0;
    double xdot = 0.0;
};

/// x'' = -(k x x' + omega^2 x + (k^2/9) x^3). Accepts k = 0.
double lienard_rhs(const TrajectoryState& s, const Couplings& c);

/// Samples of the second-order flow at `times` (see ode::integrate for the contract).
std::vector<TrajectoryState> integrate_lienard(const Couplings& c, const TrajectoryState& initial,
                                               std::span<const double> times,
                                               const ode::Tolerances& tol = {});

/// Uniform sampling on [initial.t, t_end] with `count` points.
std::vector<TrajectoryState> integrate_lienard(const Couplings& c, const TrajectoryState& initial,
                                               double t_end, std::size_t count,
                                               const ode::Tolerances& tol = {});

/// Position, velocity and acceleration of the closed-form orbit
///     x = A sin(th) / (1 - (kA/3w) cos(th)),  th = w t + delta,
/// differentiated analytically.
struct ExactKinematics {
    double x;
    double xdot;
    double xddot;
};

ExactKinematics exact_kinematics(double t, const LienardParams& p, const SolutionParams& s);
double exact_x(double t, const LienardParams& p, const SolutionParams& s);
TrajectoryState exact_state(double t, const LienardParams& p, const SolutionParams& s);

/// Equation-of-motion residual of the closed form at t.
double exact_residual(double t, const LienardParams& p, const SolutionParams& s);

/// Recovers (A, delta) from a phase point on a closed orbit by Newton iteration,
/// seeded with the harmonic guess. Throws NumericalError if it does not converge
/// or lands outside the amplitude bound.
SolutionParams fit_solution_params(const LienardParams& p, const TrajectoryState& s);

/// sqrt(3 w^2/(2k) - k A^2/6); throws DomainError for a non-positive radicand.
double ptilde_scale(const LienardParams& p, const SolutionParams& s);

/// Scaled momentum on the closed orbit of the eta = -3/2 Hamiltonian:
///     [1 - (kA/3w) cos(th)] / ptilde_scale
double exact_ptilde(double t, const LienardParams& p, const SolutionParams& s);

/// [1 + (kx/3w)^2] pbar^2 - 2 pbar + [1 - (kA/3w)^2] with pbar = ptilde * ptilde_scale.
double phase_conic_residual(double x, double pbar, const LienardParams& p, const SolutionParams& s);

/// Largest |x| on the orbit, A / sqrt(1 - (kA/3w)^2).
double orbit_turning_point(const LienardParams& p, const SolutionParams& s);

/// (u, x) with u' = u f(x)/eta, x' = u + W(x), W = eta g/f.
struct FirstOrderState {
    double t = 0.0;
    double u = 0.0;
    double x = 0.0;
};

/// W(x) = eta (a x^2 + b).
double nonlocal_drift(const LienardParams& p, const EtaBranch& branch, double x);

/// u = x' - W(x). Throws DomainError if u <= 0 (the multiplier u^eta needs u > 0).
FirstOrderState to_first_order(const TrajectoryState& s, const LienardParams& p,
                               const EtaBranch& branch);

/// Integrates the first-order pair; throws NumericalError if u leaves u > 0.
std::vector<FirstOrderState> first_order_flow(const FirstOrderState& initial,
                                              const EtaBranch& branch, const LienardParams& p,
                                              std::span<const double> times,
                                              const ode::Tolerances& tol = {});

struct MultiplierSample {
    double t;
    double value;
};

/// M = u^eta; DomainError for u <= 0.
double last_multiplier(double u, const EtaBranch& branch);

std::vector<MultiplierSample> multiplier_samples(std::span<const FirstOrderState> flow,
                                                 const EtaBranch& branch);

/// max |d/dt log M - f(x)| over the interior of a uniformly sampled flow, with
/// d/dt log M taken by fourth-order central differences of the samples.
double jlm_residual(std::span<const FirstOrderState> flow, const EtaBranch& branch,
                    const LienardParams& p);

/// Same check on a second-order trajectory, with u = x' - W(x).
double jlm_residual(std::span<const TrajectoryState> traj, const EtaBranch& branch,
                    const LienardParams& p);

} // namespace lienard
