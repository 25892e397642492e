#include "lienard/errors.hpp"
#include "lienard/specfun.hpp"

namespace lienard::specfun {

double integrate_density(std::span<const double> values, std::span<const double> grid) {
    const std::size_t n = grid.size();
    if (values.size() != n)
        throw DomainError("integrate_density: values and grid differ in length");
    if (n < 3)
        throw DomainError("integrate_density needs at least three points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("integrate_density needs a strictly increasing grid");

    double total = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2) {
        const double h0 = grid[i + 1] - grid[i];
        const double h1 = grid[i + 2] - grid[i + 1];
        const double hs = h0 + h1;
        total += hs / 6.0 *
                 ((2.0 - h1 / h0) * values[i] + hs * hs / (h0 * h1) * values[i + 1] +
                  (2.0 - h0 / h1) * values[i + 2]);
    }
    if (i + 2 == n) {
        // [x_{n-2}, x_{n-1}] under the parabola through the last three points.
        const double h0 = grid[n - 2] - grid[n - 3];
        const double h1 = grid[n - 1] - grid[n - 2];
        const double w2 = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        const double w1 = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        const double w0 = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        total += w2 * values[n - 1] + w1 * values[n - 2] - w0 * values[n - 3];
    }
    return total;
}

} // namespace lienard::specfun
