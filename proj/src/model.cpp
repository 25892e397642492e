#include "lienard/model.hpp"

#include "lienard/errors.hpp"

#include <cmath>
#include <sstream>

namespace lienard {

namespace {

constexpr double kEtaMatchTol = 1e-12;

} // namespace

LienardParams::LienardParams(double k, double omega) : k_(k), omega_(omega) {
    if (!std::isfinite(k) || !std::isfinite(omega))
        throw DomainError("k and omega must be finite");
    if (k == 0.0)
        throw DomainError("k must be nonzero (b = omega^2/k); the k = 0 harmonic limit is only "
                          "available through the equation of motion");
    if (!(omega > 0.0))
        throw DomainError("omega must be positive");
    const auto rc = derive_ratio(k, omega);
    a_ = rc.a;
    b_ = rc.b;
}

RatioCoefficients derive_ratio(double k, double omega) {
    if (k == 0.0)
        throw DomainError("k must be nonzero to form g/f = a x^2 + b");
    return {k / 9.0, omega * omega / k};
}

double amplitude_ratio(const LienardParams& p, const SolutionParams& s) {
    return p.k() * s.amplitude / (3.0 * p.omega());
}

void validate_solution(const LienardParams& p, const SolutionParams& s) {
    const double c = amplitude_ratio(p, s);
    if (!std::isfinite(s.amplitude) || !std::isfinite(s.phase) || !(c > -1.0 && c < 1.0)) {
        std::ostringstream os;
        os << "amplitude violates -1 < kA/(3 omega) < 1 (kA/(3 omega) = " << c << ")";
        throw DomainError(os.str());
    }
}

EtaBranch::EtaBranch(Root root, const LienardParams& p) {
    eta_ = root == Root::minus_three ? -3.0 : -1.5;
    // eta g/f = eta (a x^2 + b) and the integral of f contributes only to x^2,
    // so the constant term fixes nu = eta b.
    nu_ = eta_ * p.b();
}

EtaBranch EtaBranch::unchecked(double eta, double nu) { return EtaBranch(eta, nu); }

std::array<EtaBranch, 2> solve_eta_quadratic(const LienardParams& p) {
    return {EtaBranch(EtaBranch::Root::minus_three, p),
            EtaBranch(EtaBranch::Root::minus_three_halves, p)};
}

EtaBranch branch_from_value(double eta, const LienardParams& p) {
    if (std::abs(eta + 3.0) < kEtaMatchTol)
        return EtaBranch(EtaBranch::Root::minus_three, p);
    if (std::abs(eta + 1.5) < kEtaMatchTol)
        return EtaBranch(EtaBranch::Root::minus_three_halves, p);
    std::ostringstream os;
    os << "eta must be -3 or -1.5 (roots of 2 eta^2 + 9 eta + 9 = 0), got " << eta;
    throw DomainError(os.str());
}

double check_constraint(const LienardParams& p, const EtaBranch& branch, double x) {
    if (x == 0.0)
        throw DomainError("constraint check needs f(x) != 0, i.e. x != 0");
    const double inv = 1.0 / branch.eta();
    return p.ratio_derivative(x) + inv * (inv + 1.0) * p.f(x);
}

AmbiguityParams::AmbiguityParams(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw DomainError("ambiguity parameters must be finite");
    if (std::abs(alpha + beta + gamma + 1.0) > 1e-12) {
        std::ostringstream os;
        os << "ambiguity parameters must satisfy alpha + beta + gamma = -1, got "
           << alpha + beta + gamma;
        throw DomainError(os.str());
    }
}

AmbiguityParams AmbiguityParams::from_epsilon(double epsilon) {
    if (!std::isfinite(epsilon))
        throw DomainError("epsilon must be finite");
    const double alpha = 0.5 * std::sqrt(std::abs(epsilon));
    const double gamma = epsilon >= 0.0 ? alpha : -alpha;
    return {alpha, -1.0 - alpha - gamma, gamma};
}

double derive_ell(double epsilon, double k, EllBranch branch) {
    if (k == 0.0)
        throw DomainError("k must be nonzero to form ell");
    const double radicand = epsilon + 96.0 / k;
    if (!(radicand >= 0.0)) {
        std::ostringstream os;
        os << "no real ell: epsilon + 96/k = " << radicand << " < 0";
        throw DomainError(os.str());
    }
    const double root = std::sqrt(radicand);
    return branch == EllBranch::plus ? -0.5 + root : -0.5 - root;
}

QuantumSetup::QuantumSetup(const AmbiguityParams& ambiguity, const LienardParams& params,
                           EllBranch branch)
    : ambiguity_(ambiguity), params_(params),
      ell_(derive_ell(ambiguity.epsilon(), params.k(), branch)) {}

} // namespace lienard
