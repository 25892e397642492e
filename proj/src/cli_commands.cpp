#include "lienard/cli_commands.hpp"

#include "lienard/classical.hpp"
#include "lienard/errors.hpp"
#include "lienard/mechanics.hpp"
#include "lienard/spectral.hpp"
#include "lienard/text_output.hpp"
#include "lienard/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace lienard::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

AmbiguityParams ambiguity_from(const RunConfig& cfg) {
    if (cfg.alpha.has_value() != cfg.beta.has_value())
        throw DomainError("--alpha and --beta must be given together");
    if (cfg.alpha) {
        const AmbiguityParams amb(*cfg.alpha, *cfg.beta, -1.0 - *cfg.alpha - *cfg.beta);
        if (cfg.epsilon && std::abs(*cfg.epsilon - amb.epsilon()) > 1e-12)
            throw DomainError("--epsilon disagrees with -4 alpha (alpha + beta + 1)");
        return amb;
    }
    return cfg.epsilon ? AmbiguityParams::from_epsilon(*cfg.epsilon) : AmbiguityParams::minimal();
}

InnerBoundary inner_from(const RunConfig& cfg) {
    if (cfg.inner_boundary == "regular")
        return InnerBoundary::regular;
    if (cfg.inner_boundary == "dirichlet")
        return InnerBoundary::dirichlet;
    throw DomainError("--inner-boundary must be regular or dirichlet");
}

void require_format(const RunConfig& cfg, Format allowed, const char* command) {
    if (cfg.format && *cfg.format != allowed) {
        std::ostringstream os;
        os << command << " writes " << (allowed == Format::csv ? "csv" : "json") << " only";
        throw DomainError(os.str());
    }
}

const char* inner_name(InnerBoundary b) { return b == InnerBoundary::regular ? "regular" : "dirichlet"; }

} // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, Format::csv, "simulate");
    const LienardParams params(cfg.k, cfg.omega);
    const SolutionParams sol{cfg.amplitude, cfg.delta};
    validate_solution(params, sol);
    const EtaBranch branch = branch_from_value(cfg.eta, params);
    if (cfg.samples < 2)
        throw DomainError("--samples must be at least 2");
    if (!(cfg.t_end > 0.0))
        throw DomainError("--t-end must be positive");

    const auto traj = integrate_lienard(params.couplings(), exact_state(0.0, params, sol), cfg.t_end,
                                        cfg.samples, ode::Tolerances{1e-12, 1e-12});
    out << "t,x,xdot,p,ptilde,H\n";
    for (const auto& s : traj) {
        const double p = conjugate_momentum(s.x, s.xdot, branch, params);
        const double pt = scaled_momentum(p, branch);
        write_csv_row(out, {s.t, s.x, s.xdot, p, pt, hamiltonian_general(s.x, pt, branch, params)});
    }
    return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, Format::json, "verify");
    VerifyConfig vc{LienardParams(cfg.k, cfg.omega), {cfg.amplitude, cfg.delta}, cfg.samples,
                    cfg.sabotage_eta};
    const auto checks = run_verification(vc);
    ordered_json report;
    report["params"] = {{"k", cfg.k}, {"omega", cfg.omega}, {"A", cfg.amplitude}, {"delta", cfg.delta}};
    ordered_json list = ordered_json::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
        list.push_back({{"name", c.name}, {"measured", c.measured}, {"threshold", c.threshold}, {"pass", c.pass}});
        failed += c.pass ? 0 : 1;
    }
    report["checks"] = std::move(list);
    report["passed"] = checks.size() - failed;
    report["failed"] = failed;
    report["all_pass"] = failed == 0;
    out << report.dump(2) << '\n';
    return failed == 0 ? ok : verification_failed;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const LienardParams params(cfg.k, cfg.omega);
    const QuantumSetup setup(ambiguity_from(cfg), params);
    const RadialGrid grid(cfg.y_min, cfg.y_max, cfg.grid_n);
    SpectrumOptions opt;
    opt.inner = inner_from(cfg);
    const auto res = compute_spectrum(IsotonicProblem::from_setup(setup), grid, cfg.levels, opt);

    if (cfg.format.value_or(Format::json) == Format::csv) {
        out << "n,numeric,analytic,analytic_paper_printed,rel_err\n";
        for (const auto& l : res.levels)
            write_csv_row(out, {static_cast<double>(l.n), l.numeric, l.analytic, l.alternative, l.rel_error});
        return ok;
    }
    ordered_json doc;
    doc["setup"] = {{"ell", setup.ell()},
                    {"omega", setup.omega()},
                    {"epsilon", setup.epsilon()},
                    {"grid",
                     {{"y_min", grid.y_min()},
                      {"y_max", grid.y_max()},
                      {"n", grid.size()},
                      {"inner_boundary", inner_name(opt.inner)}}}};
    ordered_json levels = ordered_json::array();
    for (const auto& l : res.levels)
        levels.push_back({{"n", l.n},
                          {"numeric", l.numeric},
                          {"analytic", l.analytic},
                          {"analytic_paper_printed", l.alternative},
                          {"rel_err", l.rel_error}});
    doc["levels"] = std::move(levels);
    out << doc.dump(2) << '\n';
    return ok;
}

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, Format::csv, "wavefunction");
    const LienardParams params(cfg.k, cfg.omega);
    const QuantumSetup setup(ambiguity_from(cfg), params);
    const RadialGrid grid(cfg.y_min, cfg.y_max, cfg.grid_n);
    const auto q = IsotonicProblem::from_setup(setup);
    const auto inner = inner_from(cfg);
    SpectrumOptions opt;
    opt.inner = inner;
    // Same resolution guard as the spectrum.
    compute_spectrum(q, grid, cfg.level + 1, opt);

    const auto analytic = analytic_wavefunction(cfg.level, q, grid);
    auto numeric = numeric_wavefunction(cfg.level, q, grid, inner);
    if (overlap(analytic.phi, numeric.phi, analytic.y) < 0.0)
        for (double& v : numeric.phi)
            v = -v;
    const double a = params.a();
    const double factor = momentum_density_factor(a);

    out << "y,phi_analytic,phi_numeric,psi,ptilde,psi_of_ptilde\n";
    for (std::size_t i = 0; i < analytic.y.size(); ++i) {
        const double y = analytic.y[i];
        write_csv_row(out, {y, analytic.phi[i], numeric.phi[i], analytic.psi[i], ptilde_of_y(y, a),
                            factor * analytic.psi[i]});
    }
    return ok;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        int code = invalid_parameters;
        if (cfg.command == "simulate")
            code = cmd_simulate(cfg, out);
        else if (cfg.command == "verify")
            code = cmd_verify(cfg, out);
        else if (cfg.command == "spectrum")
            code = cmd_spectrum(cfg, out);
        else if (cfg.command == "wavefunction")
            code = cmd_wavefunction(cfg, out);
        else
            throw DomainError("unknown subcommand '" + cfg.command + "'");
        if (code == verification_failed)
            err << "error[verification]: one or more checks failed\n";
        return code;
    } catch (const DomainError& e) {
        err << "error[invalid-parameter]: " << e.what() << '\n';
        return invalid_parameters;
    } catch (const NumericalError& e) {
        err << "error[numerical]: " << e.what() << '\n';
        return numerical_failure;
    }
}

} // namespace lienard::cli
