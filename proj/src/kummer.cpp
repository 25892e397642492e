#include "lienard/errors.hpp"
#include "lienard/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lienard::specfun {

bool kummer_terminates(double a) { return a <= 0.0 && a == std::round(a); }

double kummer_1f1(const KummerParams& p, const KummerOptions& opt) {
    const auto [a, b, z] = p;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("1F1 arguments must be finite");
    if (b <= 0.0 && b == std::round(b)) {
        std::ostringstream os;
        os << "1F1 lower parameter b = " << b << " is a pole";
        throw DomainError(os.str());
    }
    if (z == 0.0 || a == 0.0)
        return 1.0;

    const bool polynomial = kummer_terminates(a);
    if (!polynomial && std::abs(z) > opt.max_abs_z) {
        std::ostringstream os;
        os << "1F1 series refused for |z| = " << std::abs(z) << " > " << opt.max_abs_z
           << " (no asymptotic expansion)";
        throw NumericalError(os.str());
    }

    double term = 1.0;
    double sum = 1.0;
    double largest = 1.0;
    const std::size_t degree = polynomial ? static_cast<std::size_t>(-a) : 0;
    for (std::size_t j = 0; j < opt.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        if (polynomial && j == degree)
            return sum;
        const double ratio = (a + dj) * z / ((b + dj) * (dj + 1.0));
        term *= ratio;
        sum += term;
        largest = std::max(largest, std::abs(term));
        if (!polynomial && std::abs(ratio) < 1.0 && std::abs(term) < opt.tol * std::abs(sum)) {
            if (largest > opt.max_cancellation * std::abs(sum)) {
                std::ostringstream os;
                os << "1F1(" << a << "; " << b << "; " << z << ") lost significance to cancellation";
                throw NumericalError(os.str());
            }
            return sum;
        }
    }
    if (polynomial)
        return sum;
    std::ostringstream os;
    os << "1F1(" << a << "; " << b << "; " << z << ") did not converge in " << opt.max_terms
       << " terms";
    throw NumericalError(os.str());
}

double kummer_ode_residual(const KummerParams& p, double h) {
    if (!(p.z > 0.0))
        throw DomainError("Kummer residual is evaluated for zeta > 0");
    const auto chi = [&](double z) { return kummer_1f1({p.a, p.b, z}); };
    const double z = p.z;
    const double fm2 = chi(z - 2 * h), fm1 = chi(z - h), f0 = chi(z), fp1 = chi(z + h),
                 fp2 = chi(z + 2 * h);
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    return z * d2 + (p.b - z) * d1 - p.a * f0;
}

} // namespace lienard::specfun
