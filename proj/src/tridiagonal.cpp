#include "lienard/tridiagonal.hpp"

#include "lienard/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace lienard::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

Tridiagonal::Tridiagonal(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.size() < 2)
        throw DomainError("tridiagonal matrix needs n >= 2");
    if (off_.size() + 1 != diag_.size())
        throw DomainError("tridiagonal off-diagonal must have n - 1 entries");
    double max_off2 = 0.0;
    for (double e : off_)
        max_off2 = std::max(max_off2, e * e);
    pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, max_off2);
}

double Tridiagonal::norm() const {
    const std::size_t n = size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag_[i]);
        if (i > 0)
            row += std::abs(off_[i - 1]);
        if (i + 1 < n)
            row += std::abs(off_[i]);
        best = std::max(best, row);
    }
    return best;
}

std::size_t Tridiagonal::sturm_count(double lambda) const {
    std::size_t count = 0;
    double q = diag_[0] - lambda;
    if (std::abs(q) < pivmin_)
        q = -pivmin_;
    if (q < 0.0)
        ++count;
    for (std::size_t i = 1; i < diag_.size(); ++i) {
        q = diag_[i] - lambda - off_[i - 1] * off_[i - 1] / q;
        if (std::abs(q) < pivmin_)
            q = -pivmin_;
        if (q < 0.0)
            ++count;
    }
    return count;
}

std::vector<double> Tridiagonal::apply(std::span<const double> v) const {
    const std::size_t n = size();
    if (v.size() != n)
        throw DomainError("tridiagonal apply: size mismatch");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag_[i] * v[i];
        if (i > 0)
            acc += off_[i - 1] * v[i - 1];
        if (i + 1 < n)
            acc += off_[i] * v[i + 1];
        out[i] = acc;
    }
    return out;
}

std::pair<double, double> Tridiagonal::gershgorin() const {
    const std::size_t n = size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0)
            r += std::abs(off_[i - 1]);
        if (i + 1 < n)
            r += std::abs(off_[i]);
        lo = std::min(lo, diag_[i] - r);
        hi = std::max(hi, diag_[i] + r);
    }
    const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin_;
    return {lo - pad, hi + pad};
}

double bisect_eigenvalue(const Tridiagonal& t, std::size_t index, const BisectionOptions& opt) {
    if (index >= t.size())
        throw DomainError("eigenvalue index out of range");
    auto [lo, hi] = t.gershgorin();
    // Invariant: sturm_count(lo) <= index < sturm_count(hi).
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (hi - lo <= std::max(opt.abs_tol, 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))))
            break;
        if (t.sturm_count(mid) <= index)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eig_tridiagonal_serial(const Tridiagonal& t, std::size_t count,
                                           const BisectionOptions& opt) {
    if (count > t.size())
        throw DomainError("requested more eigenvalues than the matrix has");
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = bisect_eigenvalue(t, k, opt);
    return out;
}

std::vector<double> eig_tridiagonal(const Tridiagonal& t, std::size_t count,
                                    const BisectionOptions& opt) {
    if (count > t.size())
        throw DomainError("requested more eigenvalues than the matrix has");
    std::vector<double> out(count);
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = bisect_eigenvalue(t, static_cast<std::size_t>(k), opt);
    return out;
}

namespace {

// LU factorization with partial pivoting of a general tridiagonal matrix
// (lower dl, diagonal d, upper du), producing a second superdiagonal du2.
struct TridiagonalLU {
    std::vector<double> dl, d, du, du2;
    std::vector<char> swapped;

    TridiagonalLU(const Tridiagonal& t, double shift, double tiny) {
        const std::size_t n = t.size();
        dl.assign(t.off().begin(), t.off().end());
        du.assign(t.off().begin(), t.off().end());
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = t.diag()[i] - shift;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n - 1, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0)
                    d[i] = tiny;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (d[n - 1] == 0.0)
            d[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t i = n - 2; i-- > 0;)
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

double normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    s = std::sqrt(s);
    for (double& x : v)
        x /= s;
    return s;
}

} // namespace

std::vector<double> inverse_iteration(const Tridiagonal& t, double eigenvalue) {
    const std::size_t n = t.size();
    const double tnorm = std::max(t.norm(), std::numeric_limits<double>::min());
    const TridiagonalLU lu(t, eigenvalue, kEps * tnorm);

    // Deterministic start vector with components along every eigenvector.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    normalize(v);

    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 8; ++iter) {
        lu.solve(v);
        if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }))
            throw NumericalError("inverse iteration broke down (singular shifted system)");
        normalize(v);
        const auto tv = t.apply(v);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual += (tv[i] - eigenvalue * v[i]) * (tv[i] - eigenvalue * v[i]);
        residual = std::sqrt(residual);
        if (iter >= 1 && residual < 1e-10 * tnorm)
            break;
    }
    if (!(residual < 1e-8 * tnorm)) {
        std::ostringstream os;
        os << "inverse iteration residual " << residual << " exceeds 1e-8 ||T||";
        throw NumericalError(os.str());
    }

    const double vmax = std::abs(*std::max_element(
        v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }));
    for (double x : v) {
        if (std::abs(x) > 1e-8 * vmax) {
            if (x < 0.0)
                for (double& y : v)
                    y = -y;
            break;
        }
    }
    return v;
}

} // namespace lienard::specfun
