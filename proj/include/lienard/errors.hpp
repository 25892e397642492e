#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

/// Raised when a parameter record or call violates its domain
/// (k = 0, amplitude outside the periodic bound, non-positive fractional-power base, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical kernel cannot deliver the requested accuracy
/// (step-size underflow, series non-convergence, coarse grid, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lienard
