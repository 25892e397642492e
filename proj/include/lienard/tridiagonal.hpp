#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for selected
// eigenvalues and inverse iteration for their eigenvectors.
//
// eig_tridiagonal() bisects disjoint eigenvalue indices concurrently (OpenMP);
// eig_tridiagonal_serial() is the reference. Each index is bisected from the
// same Gershgorin interval with the same arithmetic, so both are bit-identical.

#include <cstddef>
#include <span>
#include <vector>

namespace lienard::specfun {

class Tridiagonal {
public:
    /// Throws DomainError unless diag.size() >= 2 and off.size() == diag.size() - 1.
    Tridiagonal(std::vector<double> diag, std::vector<double> off);

    std::size_t size() const { return diag_.size(); }
    std::span<const double> diag() const { return diag_; }
    std::span<const double> off() const { return off_; }

    /// Max absolute row sum, an upper bound for the spectral radius.
    double norm() const;

    /// Number of eigenvalues strictly below lambda.
    std::size_t sturm_count(double lambda) const;

    /// T v
    std::vector<double> apply(std::span<const double> v) const;

    /// Gershgorin enclosure [lo, hi] of the spectrum.
    std::pair<double, double> gershgorin() const;

private:
    std::vector<double> diag_;
    std::vector<double> off_;
    double pivmin_;
};

struct BisectionOptions {
    /// Stop once the bracket is narrower than this; zero bisects to machine precision.
    double abs_tol = 0.0;
};

/// The k-th smallest eigenvalue (0-based).
double bisect_eigenvalue(const Tridiagonal& t, std::size_t index, const BisectionOptions& opt = {});

/// The `count` smallest eigenvalues, ascending. Throws DomainError if count > size().
std::vector<double> eig_tridiagonal(const Tridiagonal& t, std::size_t count,
                                    const BisectionOptions& opt = {});
std::vector<double> eig_tridiagonal_serial(const Tridiagonal& t, std::size_t count,
                                           const BisectionOptions& opt = {});

/// Unit eigenvector for a (computed) eigenvalue. The sign makes the first
/// component larger than 1e-8 max|v| positive. Throws NumericalError if the
/// residual ||T v - lambda v|| does not drop below 1e-8 ||T||.
std::vector<double> inverse_iteration(const Tridiagonal& t, double eigenvalue);

} // namespace lienard::specfun
