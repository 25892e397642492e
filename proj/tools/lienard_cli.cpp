// lienard: trajectories, verification reports, spectra and wavefunctions of
// the Lienard oscillator and its momentum-space quantization.

#include "lienard/cli_commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

void add_common(CLI::App* sub, lienard::cli::RunConfig& cfg, std::string& out_path) {
    sub->add_option("--k", cfg.k, "coupling k (nonzero)");
    sub->add_option("--omega", cfg.omega, "angular frequency (> 0)");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, lienard::cli::Format>{{"csv", lienard::cli::Format::csv},
                                                        {"json", lienard::cli::Format::json}}));
}

void add_orbit(CLI::App* sub, lienard::cli::RunConfig& cfg) {
    sub->add_option("--A", cfg.amplitude, "orbit amplitude, |kA/(3 omega)| < 1");
    sub->add_option("--delta", cfg.delta, "orbit phase (radians)");
}

void add_quantum(CLI::App* sub, lienard::cli::RunConfig& cfg) {
    sub->add_option("--epsilon", cfg.epsilon, "ordering parameter epsilon = -4 alpha (alpha + beta + 1)");
    sub->add_option("--alpha", cfg.alpha, "ordering exponent alpha (with --beta)");
    sub->add_option("--beta", cfg.beta, "ordering exponent beta (with --alpha)");
    sub->add_option("--grid-n", cfg.grid_n, "radial grid nodes");
    sub->add_option("--y-min", cfg.y_min, "inner grid edge (> 0)");
    sub->add_option("--y-max", cfg.y_max, "outer grid edge");
    sub->add_option("--inner-boundary", cfg.inner_boundary, "regular or dirichlet");
}

} // namespace

int main(int argc, char** argv) {
    using lienard::cli::RunConfig;
    RunConfig cfg;
    std::string out_path;

    CLI::App app{"Lienard oscillator: classical flows, verification and isotonic spectrum"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "integrate the equation of motion, CSV t,x,xdot,p,ptilde,H");
    add_common(simulate, cfg, out_path);
    add_orbit(simulate, cfg);
    simulate->add_option("--eta", cfg.eta, "multiplier branch, -3 or -1.5");
    simulate->add_option("--t-end", cfg.t_end, "final time");
    simulate->add_option("--samples", cfg.samples, "number of rows");

    auto* verify = app.add_subcommand("verify", "run the property checks, JSON report");
    add_common(verify, cfg, out_path);
    add_orbit(verify, cfg);
    verify->add_option("--samples", cfg.samples, "samples per period");
    verify->add_option("--sabotage-eta", cfg.sabotage_eta)->group("");

    auto* spectrum = app.add_subcommand("spectrum", "numeric vs closed-form isotonic levels");
    add_common(spectrum, cfg, out_path);
    add_quantum(spectrum, cfg);
    spectrum->add_option("--levels", cfg.levels, "number of levels (<= 10)");

    auto* wave = app.add_subcommand("wavefunction", "closed-form and numeric eigenfunction samples, CSV");
    add_common(wave, cfg, out_path);
    add_quantum(wave, cfg);
    wave->add_option("--level", cfg.level, "level index n (<= 9)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[invalid-parameter]: " << e.what() << '\n';
        return lienard::cli::invalid_parameters;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    if (out_path.empty())
        return lienard::cli::run_command(cfg, std::cout, std::cerr);

    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error[invalid-parameter]: cannot open output file '" << out_path << "'\n";
        return lienard::cli::invalid_parameters;
    }
    const int code = lienard::cli::run_command(cfg, file, std::cerr);
    file.close();
    return code;
}
