#include "lienard/classical.hpp"

#include "lienard/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace lienard {

double lienard_rhs(const TrajectoryState& s, const Couplings& c) {
    return -(damping_f(c, s.x) * s.xdot + restoring_g(c, s.x));
}

std::vector<TrajectoryState> integrate_lienard(const Couplings& c, const TrajectoryState& initial,
                                               std::span<const double> times,
                                               const ode::Tolerances& tol) {
    const auto rhs = [&c](double t, const ode::Vec<2>& y) -> ode::Vec<2> {
        return {y[1], lienard_rhs({t, y[0], y[1]}, c)};
    };
    const auto samples = ode::integrate<2>(rhs, initial.t, {initial.x, initial.xdot}, times, tol);
    std::vector<TrajectoryState> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back({s.t, s.y[0], s.y[1]});
    return out;
}

std::vector<TrajectoryState> integrate_lienard(const Couplings& c, const TrajectoryState& initial,
                                               double t_end, std::size_t count,
                                               const ode::Tolerances& tol) {
    const auto times = ode::uniform_times(initial.t, t_end, count);
    return integrate_lienard(c, initial, times, tol);
}

ExactKinematics exact_kinematics(double t, const LienardParams& p, const SolutionParams& s) {
    const double w = p.omega();
    const double A = s.amplitude;
    const double c = amplitude_ratio(p, s);
    const double th = w * t + s.phase;
    const double sn = std::sin(th);
    const double cs = std::cos(th);

    const double num = A * sn;
    const double num1 = A * w * cs;
    const double num2 = -A * w * w * sn;
    const double den = 1.0 - c * cs;
    const double den1 = c * w * sn;
    const double den2 = c * w * w * cs;

    const double cross = num1 * den - num * den1;
    const double x = num / den;
    const double xdot = cross / (den * den);
    const double xddot = (num2 * den - num * den2) / (den * den) - 2.0 * den1 * cross / (den * den * den);
    return {x, xdot, xddot};
}

double exact_x(double t, const LienardParams& p, const SolutionParams& s) {
    const double c = amplitude_ratio(p, s);
    const double th = p.omega() * t + s.phase;
    return s.amplitude * std::sin(th) / (1.0 - c * std::cos(th));
}

TrajectoryState exact_state(double t, const LienardParams& p, const SolutionParams& s) {
    const auto kin = exact_kinematics(t, p, s);
    return {t, kin.x, kin.xdot};
}

double exact_residual(double t, const LienardParams& p, const SolutionParams& s) {
    const auto kin = exact_kinematics(t, p, s);
    return kin.xddot - lienard_rhs({t, kin.x, kin.xdot}, p.couplings());
}

SolutionParams fit_solution_params(const LienardParams& p, const TrajectoryState& target) {
    const double w = p.omega();
    SolutionParams s{std::hypot(target.x, target.xdot / w), 0.0};
    s.phase = std::atan2(w * target.x, target.xdot) - w * target.t;

    const auto residual = [&](const SolutionParams& q) {
        const auto st = exact_state(target.t, p, q);
        return std::array<double, 2>{st.x - target.x, st.xdot - target.xdot};
    };

    // The harmonic seed can sit outside the amplitude bound for strong coupling.
    const double bound = 3.0 * w / std::abs(p.k());
    if (s.amplitude >= bound)
        s.amplitude = 0.5 * bound;

    for (int iter = 0; iter < 100; ++iter) {
        const auto r = residual(s);
        if (std::hypot(r[0], r[1]) < 1e-14 * (1.0 + std::hypot(target.x, target.xdot))) {
            validate_solution(p, s);
            return s;
        }
        const double hA = 1e-7 * std::max(1.0, std::abs(s.amplitude));
        const double hd = 1e-7;
        const auto rAp = residual({s.amplitude + hA, s.phase});
        const auto rAm = residual({s.amplitude - hA, s.phase});
        const auto rdp = residual({s.amplitude, s.phase + hd});
        const auto rdm = residual({s.amplitude, s.phase - hd});
        const double j00 = (rAp[0] - rAm[0]) / (2 * hA), j01 = (rdp[0] - rdm[0]) / (2 * hd);
        const double j10 = (rAp[1] - rAm[1]) / (2 * hA), j11 = (rdp[1] - rdm[1]) / (2 * hd);
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det))
            break;
        double dA = -(j11 * r[0] - j01 * r[1]) / det;
        const double dd = -(-j10 * r[0] + j00 * r[1]) / det;
        // Damp steps that would cross the amplitude bound.
        while (std::abs(s.amplitude + dA) >= bound)
            dA *= 0.5;
        s.amplitude += dA;
        s.phase += dd;
    }
    throw NumericalError("could not recover (A, delta) from the phase point");
}

double ptilde_scale(const LienardParams& p, const SolutionParams& s) {
    const double w = p.omega();
    const double radicand = 3.0 * w * w / (2.0 * p.k()) - p.k() * s.amplitude * s.amplitude / 6.0;
    if (!(radicand > 0.0)) {
        std::ostringstream os;
        os << "3 omega^2/(2k) - k A^2/6 must be positive, got " << radicand;
        throw DomainError(os.str());
    }
    return std::sqrt(radicand);
}

double exact_ptilde(double t, const LienardParams& p, const SolutionParams& s) {
    const double c = amplitude_ratio(p, s);
    return (1.0 - c * std::cos(p.omega() * t + s.phase)) / ptilde_scale(p, s);
}

double phase_conic_residual(double x, double pbar, const LienardParams& p, const SolutionParams& s) {
    const double kx = p.k() * x / (3.0 * p.omega());
    const double c = amplitude_ratio(p, s);
    return (1.0 + kx * kx) * pbar * pbar - 2.0 * pbar + (1.0 - c * c);
}

double orbit_turning_point(const LienardParams& p, const SolutionParams& s) {
    const double c = amplitude_ratio(p, s);
    return std::abs(s.amplitude) / std::sqrt(1.0 - c * c);
}

double nonlocal_drift(const LienardParams& p, const EtaBranch& branch, double x) {
    return branch.eta() * p.ratio(x);
}

FirstOrderState to_first_order(const TrajectoryState& s, const LienardParams& p,
                               const EtaBranch& branch) {
    const double u = s.xdot - nonlocal_drift(p, branch, s.x);
    if (!(u > 0.0)) {
        std::ostringstream os;
        os << "nonlocal variable u = x' - eta g/f must be positive, got " << u;
        throw DomainError(os.str());
    }
    return {s.t, u, s.x};
}

std::vector<FirstOrderState> first_order_flow(const FirstOrderState& initial,
                                              const EtaBranch& branch, const LienardParams& p,
                                              std::span<const double> times,
                                              const ode::Tolerances& tol) {
    const double eta = branch.eta();
    const auto rhs = [&](double, const ode::Vec<2>& y) -> ode::Vec<2> {
        return {y[0] * p.f(y[1]) / eta, y[0] + eta * p.ratio(y[1])};
    };
    const auto samples = ode::integrate<2>(rhs, initial.t, {initial.u, initial.x}, times, tol);
    std::vector<FirstOrderState> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (!(s.y[0] > 0.0)) {
            std::ostringstream os;
            os << "nonlocal variable left u > 0 at t = " << s.t;
            throw NumericalError(os.str());
        }
        out.push_back({s.t, s.y[0], s.y[1]});
    }
    return out;
}

double last_multiplier(double u, const EtaBranch& branch) {
    if (!(u > 0.0))
        throw DomainError("the multiplier u^eta needs u > 0");
    return std::pow(u, branch.eta());
}

std::vector<MultiplierSample> multiplier_samples(std::span<const FirstOrderState> flow,
                                                 const EtaBranch& branch) {
    std::vector<MultiplierSample> out;
    out.reserve(flow.size());
    for (const auto& s : flow)
        out.push_back({s.t, last_multiplier(s.u, branch)});
    return out;
}

namespace {

// Fourth-order central difference of log M on a uniform grid compared with f(x).
double log_derivative_mismatch(std::span<const double> t, std::span<const double> log_m,
                               std::span<const double> x, double k) {
    const std::size_t n = t.size();
    if (n < 5)
        throw DomainError("need at least five samples to differentiate log M");
    const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::abs(dt))
            throw DomainError("log M differentiation needs uniformly spaced samples");
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double d = (-log_m[i + 2] + 8.0 * log_m[i + 1] - 8.0 * log_m[i - 1] + log_m[i - 2]) /
                         (12.0 * dt);
        worst = std::max(worst, std::abs(d - k * x[i]));
    }
    return worst;
}

} // namespace

double jlm_residual(std::span<const FirstOrderState> flow, const EtaBranch& branch,
                    const LienardParams& p) {
    std::vector<double> t, log_m, x;
    for (const auto& s : flow) {
        t.push_back(s.t);
        log_m.push_back(std::log(last_multiplier(s.u, branch)));
        x.push_back(s.x);
    }
    return log_derivative_mismatch(t, log_m, x, p.k());
}

double jlm_residual(std::span<const TrajectoryState> traj, const EtaBranch& branch,
                    const LienardParams& p) {
    std::vector<FirstOrderState> flow;
    flow.reserve(traj.size());
    for (const auto& s : traj)
        flow.push_back(to_first_order(s, p, branch));
    return jlm_residual(flow, branch, p);
}

} // namespace lienard
