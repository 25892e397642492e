#include "lienard/verify.hpp"

#include "lienard/classical.hpp"
#include "lienard/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace lienard {

namespace {

Check make_check(std::string name, double measured, double threshold) {
    const bool pass = std::isfinite(measured) && measured < threshold;
    return {std::move(name), measured, threshold, pass};
}

std::string branch_label(const EtaBranch& b) { return b.eta() == -3.0 ? "eta_-3" : "eta_-1.5"; }

constexpr ode::Tolerances kTight{1e-12, 1e-12};

} // namespace

std::vector<Check> run_verification(const VerifyConfig& cfg) {
    const LienardParams& p = cfg.params;
    const SolutionParams& s = cfg.solution;
    validate_solution(p, s);
    const auto branches = solve_eta_quadratic(p);
    const double period = 2.0 * std::numbers::pi / p.omega();
    const auto times = ode::uniform_times(0.0, period, cfg.samples + 1);
    std::vector<Check> out;

    {
        double worst = 0.0;
        for (const auto& b : branches)
            worst = std::max(worst, std::abs(b.quadratic_residual()));
        out.push_back(make_check("eta_quadratic_roots", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = -10.0 + 0.2 * i + 0.0137;
            const double rel = std::abs(p.g(x) / p.f(x) - p.ratio(x)) / std::abs(p.ratio(x));
            worst = std::max(worst, rel);
        }
        out.push_back(make_check("ratio_identity", worst, 1e-12));
    }
    {
        std::vector<EtaBranch> probe(branches.begin(), branches.end());
        if (cfg.constraint_eta)
            probe = {EtaBranch::unchecked(*cfg.constraint_eta, *cfg.constraint_eta * p.b())};
        double worst = 0.0;
        for (const auto& b : probe) {
            for (int i = 0; i < 1000; ++i) {
                const double x = -10.0 + 20.0 * (i + 0.5) / 1000.0;
                const double scale = std::abs(p.ratio_derivative(x)) + std::abs(p.f(x));
                worst = std::max(worst, std::abs(check_constraint(p, b, x)) / scale);
            }
        }
        out.push_back(make_check("constraint_residual", worst, 1e-12));
    }
    {
        double worst = 0.0;
        double drift = 0.0;
        for (double t : times)
            worst = std::max(worst, std::abs(exact_residual(t, p, s)));
        for (double t : times)
            drift = std::max(drift, std::abs(exact_x(t + period, p, s) - exact_x(t, p, s)));
        out.push_back(make_check("exact_solution_residual", worst, 1e-8));
        out.push_back(make_check("exact_solution_periodicity", drift, 1e-12));
    }

    const double scale = ptilde_scale(p, s);
    {
        double worst = 0.0;
        double h_min = INFINITY, h_max = -INFINITY;
        for (double t : times) {
            const double x = exact_x(t, p, s);
            const double pt = exact_ptilde(t, p, s);
            worst = std::max(worst, std::abs(phase_conic_residual(x, pt * scale, p, s)));
            const double h = hamiltonian_isotonic(x, pt, p);
            h_min = std::min(h_min, h);
            h_max = std::max(h_max, h);
        }
        out.push_back(make_check("conic_exact_orbit", worst, 1e-10));
        out.push_back(make_check("energy_exact_pair", (h_max - h_min) / std::abs(h_max), 1e-9));
    }

    const TrajectoryState start = exact_state(0.0, p, s);
    const auto direct = integrate_lienard(p.couplings(), start, times, kTight);

    for (const auto& b : branches) {
        const auto flow = first_order_flow(to_first_order(start, p, b), b, p, times, kTight);
        out.push_back(make_check("jlm_" + branch_label(b), jlm_residual(flow, b, p), 1e-6));
        double gap = 0.0;
        for (std::size_t i = 0; i < flow.size(); ++i)
            gap = std::max(gap, std::abs(flow[i].x - direct[i].x));
        out.push_back(make_check("first_order_consistency_" + branch_label(b), gap, 1e-6));
    }

    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    std::uniform_real_distribution<double> bases(0.2, 5.0);
    for (const auto& b : branches) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            const double xdot = bases(rng) + b.eta() * p.ratio(x);
            const double mom = conjugate_momentum(x, xdot, b, p);
            const double h = hamiltonian_general(x, scaled_momentum(mom, b), b, p);
            worst = std::max(worst, std::abs(h + lagrangian(x, xdot, b, p) - mom * xdot));
        }
        out.push_back(make_check("legendre_" + branch_label(b), worst, 1e-10));
    }

    for (const auto& b : branches) {
        const PhasePoint z0 = to_phase_point(start, b, p);
        const auto flow = hamilton_flow(z0, 0.0, b, p, times, kTight);
        double gap = 0.0;
        double h_min = INFINITY, h_max = -INFINITY;
        double conic = 0.0;
        for (std::size_t i = 0; i < flow.size(); ++i) {
            gap = std::max(gap, std::abs(flow[i].x - direct[i].x));
            const double h = hamiltonian_canonical({flow[i].x, flow[i].p}, b, p);
            h_min = std::min(h_min, h);
            h_max = std::max(h_max, h);
            if (b.eta() == -1.5) {
                const double pt = scaled_momentum(flow[i].p, b);
                conic = std::max(conic, std::abs(phase_conic_residual(flow[i].x, pt * scale, p, s)));
            }
        }
        out.push_back(make_check("bihamiltonian_" + branch_label(b), gap, 1e-6));
        out.push_back(make_check("energy_flow_" + branch_label(b), (h_max - h_min) / std::abs(h_max), 1e-9));
        if (b.eta() == -1.5)
            out.push_back(make_check("conic_numeric_orbit", conic, 1e-8));
    }
    return out;
}

} // namespace lienard
