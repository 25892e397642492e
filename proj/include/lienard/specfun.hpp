#pragma once

// Confluent hypergeometric function and quadrature.

#include <cstddef>
#include <span>

namespace lienard::specfun {

/// Arguments of 1F1(a; b; z).
struct KummerParams {
    double a;
    double b;
    double z;
};

struct KummerOptions {
    /// Series stops once |term| < tol * |partial sum| and terms are shrinking.
    double tol = 1e-17;
    std::size_t max_terms = 5000;
    /// Non-terminating series are refused beyond this |z|; no asymptotic regime is implemented.
    double max_abs_z = 200.0;
    /// Refuse results whose largest term exceeds the sum by this factor (cancellation).
    double max_cancellation = 1e8;
};

/// True when a is a non-positive integer, i.e. the series is a polynomial of degree -a.
bool kummer_terminates(double a);

/// Power series of 1F1(a; b; z) with t_{j+1} = t_j (a+j) z / ((b+j)(j+1)).
/// Throws DomainError for b = 0, -1, -2, ... and NumericalError when the
/// series cannot be summed accurately.
double kummer_1f1(const KummerParams& p, const KummerOptions& opt = {});
inline double kummer_1f1(double a, double b, double z) { return kummer_1f1({a, b, z}); }

/// zeta chi'' + (b - zeta) chi' - a chi with chi = 1F1(a; b; .) and the
/// derivatives taken by fourth-order central differences of step h.
double kummer_ode_residual(const KummerParams& p, double h = 1e-3);

/// Composite Simpson rule on a (possibly graded) grid; an odd trailing
/// interval uses the quadratic through the last three points.
/// Throws DomainError for fewer than three points or a non-increasing grid.
double integrate_density(std::span<const double> values, std::span<const double> grid);

} // namespace lienard::specfun
