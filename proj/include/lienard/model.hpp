#pragma once

// Parameter records for the Lienard oscillator
//
//     x'' + k x x' + omega^2 x + (k^2/9) x^3 = 0
//
// together with the closed-form constants every other module depends on:
// the ratio g/f = a x^2 + b, the two multiplier exponents eta and their
// integration constants nu, the ordering parameter epsilon and the
// isotonic index ell.

#include <array>

namespace lienard {

/// Raw couplings with no k != 0 requirement. Only the equation of motion
/// accepts these; k = 0 is the harmonic limit.
struct Couplings {
    double k = 1.0;
    double omega = 1.0;
};

/// f(x) = k x
inline double damping_f(const Couplings& c, double x) { return c.k * x; }
/// g(x) = omega^2 x + (k^2/9) x^3
inline double restoring_g(const Couplings& c, double x) {
    return c.omega * c.omega * x + c.k * c.k / 9.0 * x * x * x;
}

class LienardParams {
public:
    /// Throws DomainError unless k != 0 and omega > 0 (both finite).
    LienardParams(double k, double omega);

    double k() const { return k_; }
    double omega() const { return omega_; }
    /// Coefficients of g/f = a x^2 + b.
    double a() const { return a_; }
    double b() const { return b_; }

    Couplings couplings() const { return {k_, omega_}; }

    double f(double x) const { return k_ * x; }
    double g(double x) const { return restoring_g(couplings(), x); }
    /// g/f written as a x^2 + b, regular at x = 0.
    double ratio(double x) const { return a_ * x * x + b_; }
    double ratio_derivative(double x) const { return 2.0 * a_ * x; }

private:
    double k_;
    double omega_;
    double a_;
    double b_;
};

/// (a, b) with g/f = a x^2 + b; rejects k = 0.
struct RatioCoefficients {
    double a;
    double b;
};
RatioCoefficients derive_ratio(double k, double omega);

/// Amplitude and phase of the closed-form periodic orbit.
struct SolutionParams {
    double amplitude = 1.0;
    double phase = 0.0;
};

/// kA/(3 omega); the periodic orbit exists for |value| < 1.
double amplitude_ratio(const LienardParams& p, const SolutionParams& s);

/// Throws DomainError unless -1 < kA/(3 omega) < 1.
void validate_solution(const LienardParams& p, const SolutionParams& s);

/// One root of 2 eta^2 + 9 eta + 9 = 0 with its integration constant nu.
class EtaBranch {
public:
    enum class Root { minus_three, minus_three_halves };

    EtaBranch(Root root, const LienardParams& p);

    /// Unchecked branch for probing the constraint with a non-root eta.
    static EtaBranch unchecked(double eta, double nu);

    double eta() const { return eta_; }
    double nu() const { return nu_; }
    /// 2 eta^2 + 9 eta + 9
    double quadratic_residual() const { return 2.0 * eta_ * eta_ + 9.0 * eta_ + 9.0; }

private:
    EtaBranch(double eta, double nu) : eta_(eta), nu_(nu) {}
    double eta_;
    double nu_;
};

/// Both roots, ordered {-3, -3/2}, with nu = eta * omega^2 / k.
std::array<EtaBranch, 2> solve_eta_quadratic(const LienardParams& p);

/// Parses -3 or -1.5 (within 1e-12); anything else is a DomainError.
EtaBranch branch_from_value(double eta, const LienardParams& p);

/// d/dx(g/f) + (1/eta)(1/eta + 1) f(x). Zero for both valid branches.
/// Throws DomainError for x = 0 (f vanishes).
double check_constraint(const LienardParams& p, const EtaBranch& branch, double x);

/// Ordering exponents of the symmetrized variable-mass kinetic term.
class AmbiguityParams {
public:
    /// Throws DomainError unless alpha + beta + gamma = -1 (to 1e-12).
    AmbiguityParams(double alpha, double beta, double gamma);

    /// alpha = gamma = 0, beta = -1.
    static AmbiguityParams minimal() { return {0.0, -1.0, 0.0}; }
    /// A representative triple with the requested epsilon: alpha = sqrt|eps|/2,
    /// gamma = sign(eps) alpha, beta = -1 - alpha - gamma.
    static AmbiguityParams from_epsilon(double epsilon);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    /// -4 alpha (alpha + beta + 1), which equals 4 alpha gamma.
    double epsilon() const {
        const double e = -4.0 * alpha_ * (alpha_ + beta_ + 1.0);
        return e == 0.0 ? 0.0 : e;
    }

private:
    double alpha_;
    double beta_;
    double gamma_;
};

enum class EllBranch { plus, minus };

/// ell = -1/2 +- sqrt(epsilon + 96/k). Throws DomainError if the radicand is negative.
double derive_ell(double epsilon, double k, EllBranch branch = EllBranch::plus);

/// Everything the momentum-space eigenproblem needs.
class QuantumSetup {
public:
    QuantumSetup(const AmbiguityParams& ambiguity, const LienardParams& params,
                 EllBranch branch = EllBranch::plus);

    const AmbiguityParams& ambiguity() const { return ambiguity_; }
    const LienardParams& params() const { return params_; }
    double epsilon() const { return ambiguity_.epsilon(); }
    double ell() const { return ell_; }
    double omega() const { return params_.omega(); }
    /// epsilon - 1/4 + 96/k
    double centrifugal() const { return epsilon() - 0.25 + 96.0 / params_.k(); }

private:
    AmbiguityParams ambiguity_;
    LienardParams params_;
    double ell_;
};

} // namespace lienard
