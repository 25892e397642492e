#pragma once

// Named property checks over the classical and Hamiltonian descriptions.
// Each check reports its measured residual against a fixed threshold.

#include "lienard/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lienard {

struct Check {
    std::string name;
    double measured;
    double threshold;
    bool pass;
};

struct VerifyConfig {
    LienardParams params{1.0, 1.0};
    SolutionParams solution{};
    /// Samples per period for residual, conic and energy scans.
    std::size_t samples = 1024;
    /// Probe the constraint with this eta instead of the two roots (test hook).
    std::optional<double> constraint_eta;
};

std::vector<Check> run_verification(const VerifyConfig& cfg);

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

} // namespace lienard
