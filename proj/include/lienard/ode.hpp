#pragma once

// Adaptive Dormand-Prince 5(4) driver with the 4th-order continuous
// extension for dense output, and a fixed-step classical RK4 used as an
// independent cross-check.

#include "lienard/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lienard::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Tolerances {
    double rtol = 1e-12;
    double atol = 1e-12;
    /// Zero lets the driver pick the first step.
    double initial_step = 0.0;
    std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
struct Sample {
    double t;
    Vec<N> y;
};

/// Step-size underflow or step budget exhausted. Carries the last accepted state.
class IntegrationFailure : public NumericalError {
public:
    IntegrationFailure(const std::string& what, double t, std::vector<double> state)
        : NumericalError(what), last_t(t), last_state(std::move(state)) {}
    double last_t;
    std::vector<double> last_state;
};

namespace detail {

// Butcher tableau of DOPRI5.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
std::vector<double> to_vector(const Vec<N>& y) {
    return {y.begin(), y.end()};
}

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
    Vec<N> out = y;
    for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (const auto& [coef, k] : terms)
            acc += coef * (*k)[i];
        out[i] += h * acc;
    }
    return out;
}

} // namespace detail

/// Integrates y' = rhs(t, y) from (t0, y0) and returns the solution at each
/// entry of `times`, which must be monotone in the direction of integration
/// (forward or backward). The last entry is the end of integration.
template <std::size_t N, class Rhs>
std::vector<Sample<N>> integrate(Rhs&& rhs, double t0, const Vec<N>& y0,
                                 std::span<const double> times, const Tolerances& tol = {}) {
    using namespace detail;
    std::vector<Sample<N>> out;
    if (times.empty())
        return out;
    if (!(tol.rtol > 0.0) || !(tol.atol > 0.0))
        throw DomainError("integration tolerances must be positive");
    const double t_end = times.back();
    if (t_end == t0)
        throw DomainError("integration interval is empty");
    const double dir = t_end > t0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double prev = i == 0 ? t0 : times[i - 1];
        if (dir * (times[i] - prev) < 0.0)
            throw DomainError("sample times must be monotone in the integration direction");
    }
    out.reserve(times.size());

    double t = t0;
    Vec<N> y = y0;
    Vec<N> k1 = rhs(t, y);
    std::size_t next = 0;
    while (next < times.size() && times[next] == t0)
        out.push_back({t0, y0}), ++next;

    const double span = std::abs(t_end - t0);
    double h = tol.initial_step > 0.0 ? tol.initial_step : std::min(1e-3, 1e-2 * span);
    h *= dir;

    std::size_t steps = 0;
    while (next < times.size()) {
        if (++steps > tol.max_steps) {
            std::ostringstream os;
            os << "step budget exhausted at t = " << t;
            throw IntegrationFailure(os.str(), t, to_vector(y));
        }
        if (dir * (t + h - t_end) > 0.0)
            h = t_end - t;
        if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "step size underflow at t = " << t;
            throw IntegrationFailure(os.str(), t, to_vector(y));
        }

        const Vec<N> k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
        const Vec<N> k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const Vec<N> k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vec<N> k5 =
            rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vec<N> k6 = rhs(
            t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const Vec<N> y_new =
            axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const Vec<N> k7 = rhs(t + h, y_new);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double scale = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / scale) * (e / scale);
            finite = finite && std::isfinite(y_new[i]);
        }
        err = std::sqrt(err / static_cast<double>(N));
        if (!finite || !std::isfinite(err)) {
            h *= 0.2;
            continue;
        }
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // Accepted: emit every requested time inside (t, t + h].
        const double t_new = t + h;
        while (next < times.size() && dir * (times[next] - t_new) <= 0.0) {
            const double theta = (times[next] - t) / h;
            const double theta1 = 1.0 - theta;
            Vec<N> ys;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                const double r4 = ydiff - h * k7[i] - bspl;
                const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                       d6 * k6[i] + d7 * k7[i]);
                ys[i] = y[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
            }
            if (times[next] == t_new)
                ys = y_new;
            out.push_back({times[next], ys});
            ++next;
        }

        t = t_new;
        y = y_new;
        k1 = k7;
        const double factor = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        h *= factor;
    }
    return out;
}

/// `count` equally spaced samples on [t0, t_end], endpoints included.
inline std::vector<double> uniform_times(double t0, double t_end, std::size_t count) {
    if (count < 2)
        throw DomainError("need at least two sample times");
    std::vector<double> ts(count);
    for (std::size_t i = 0; i < count; ++i)
        ts[i] = t0 + (t_end - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
    ts.back() = t_end;
    return ts;
}

/// Fixed-step classical Runge-Kutta, returns the state at t_end.
template <std::size_t N, class Rhs>
Vec<N> integrate_rk4(Rhs&& rhs, double t0, const Vec<N>& y0, double t_end, std::size_t steps) {
    if (steps == 0)
        throw DomainError("rk4 needs at least one step");
    const double h = (t_end - t0) / static_cast<double>(steps);
    Vec<N> y = y0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = t0 + h * static_cast<double>(s);
        const Vec<N> k1 = rhs(t, y);
        const Vec<N> k2 = rhs(t + 0.5 * h, detail::axpy(y, h, {{0.5, &k1}}));
        const Vec<N> k3 = rhs(t + 0.5 * h, detail::axpy(y, h, {{0.5, &k2}}));
        const Vec<N> k4 = rhs(t + h, detail::axpy(y, h, {{1.0, &k3}}));
        y = detail::axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
    }
    return y;
}

} // namespace lienard::ode
