#pragma once

// Subcommands behind the `lienard` executable. Each writes its artifact to
// `out` and returns the process exit code; the exception-to-exit-code policy
// lives in run_command().

#include <optional>
#include <ostream>
#include <string>

namespace lienard::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    invalid_parameters = 2,
    numerical_failure = 3,
};

enum class Format { csv, json };

struct RunConfig {
    std::string command;
    double k = 1.0;
    double omega = 1.0;
    double amplitude = 1.0;
    double delta = 0.0;
    double eta = -1.5;
    std::optional<double> epsilon;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::size_t levels = 6;
    std::size_t level = 0;
    std::size_t grid_n = 6000;
    double y_min = 1e-3;
    double y_max = 12.0;
    double t_end = 12.566370614359172;
    std::size_t samples = 1024;
    std::optional<Format> format;
    std::string inner_boundary = "regular";
    std::optional<double> sabotage_eta;
};

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_wavefunction(const RunConfig& cfg, std::ostream& out);

/// Dispatches cfg.command. Failures print one line to `err`, prefixed
/// `error[invalid-parameter]:`, `error[numerical]:` or `error[verification]:`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace lienard::cli
