#pragma once

// Half-line isotonic eigenproblem
//
//     -phi'' + [ell(ell+1)/y^2 + omega^2 y^2] phi = E phi,   0 < y < inf,
//
// solved by three-point finite differences and compared with the closed form
//     E_n   = (4n + 2 ell + 3) omega,
//     phi_n = N_n y^(ell+1) exp(-omega y^2/2) 1F1(-n; ell + 3/2; omega y^2).
// Also hosts the momentum-space variable-mass operator that the radial
// problem is reduced from, so the reduction can be checked end to end.

#include "lienard/model.hpp"
#include "lienard/tridiagonal.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lienard {

/// (ell, omega) of the radial problem. ell > -3/2 keeps phi normalizable.
struct IsotonicProblem {
    double ell = 0.0;
    double omega = 1.0;

    static IsotonicProblem from_setup(const QuantumSetup& s) { return {s.ell(), s.omega()}; }
    double centrifugal() const { return ell * (ell + 1.0); }
};

class RadialGrid {
public:
    /// Throws DomainError unless 0 < y_min < y_max and n >= 100.
    RadialGrid(double y_min, double y_max, std::size_t n);

    /// y in [1e-3, 12] with 6000 nodes.
    static RadialGrid standard() { return {1e-3, 12.0, 6000}; }

    double y_min() const { return y_min_; }
    double y_max() const { return y_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return h_; }
    double node(std::size_t i) const;
    /// Nodes 1 .. n-2, the unknowns of the discretized problem.
    std::vector<double> interior() const;
    /// The grid with the spacing halved (2n - 1 nodes, same end points).
    RadialGrid refined() const { return {y_min_, y_max_, 2 * n_ - 1}; }

private:
    double y_min_;
    double y_max_;
    std::size_t n_;
    double h_;
};

/// Closure at y_min. `regular` sets the boundary value from the regular
/// solution's y^(ell+1) behaviour, phi(y_min) = phi(y_1) (y_min/y_1)^(ell+1);
/// `dirichlet` pins phi(y_min) = 0. Both pin phi(y_max) = 0.
enum class InnerBoundary { regular, dirichlet };

/// ell(ell+1)/y^2 + omega^2 y^2; DomainError for y <= 0.
double effective_potential(double y, const IsotonicProblem& q);

/// diag_i = 2/h^2 + V(y_i), off_i = -1/h^2 over the interior nodes.
specfun::Tridiagonal discretize(const IsotonicProblem& q, const RadialGrid& grid,
                                InnerBoundary inner = InnerBoundary::regular);

/// (4n + 2 ell + 3) omega, from requiring the 1F1 series to terminate.
double analytic_energy(std::size_t n, const IsotonicProblem& q);
/// (n + (ell + 3/2)/2) omega, the quarter-scaled alternative; reported next to
/// analytic_energy so the eigensolver can arbitrate between the two.
double alternative_energy(std::size_t n, const IsotonicProblem& q);
/// E = Etilde (eta + 1)^2 with eta = -3/2.
inline double unscaled_energy(double scaled) { return scaled / 4.0; }

struct LevelResult {
    std::size_t n;
    double numeric;
    double analytic;
    double alternative;
    double rel_error;
};

struct SpectrumResult {
    IsotonicProblem problem;
    double y_min;
    double y_max;
    std::size_t grid_size;
    InnerBoundary inner;
    std::vector<LevelResult> levels;
};

struct SpectrumOptions {
    InnerBoundary inner = InnerBoundary::regular;
    /// Resolution guard: refuse grids whose estimated relative discretization
    /// error h^2 E_max / 12 exceeds this bar.
    double max_estimated_error = 1e-4;
    /// Also refuse grids on which the highest level's WKB decay action
    /// int sqrt(V - E) dy from its outer turning point to y_max is below this.
    double min_tail_action = 12.0;
};

inline constexpr std::size_t kMaxLevels = 10;

/// Lowest `levels` eigenvalues next to their closed forms. DomainError for
/// levels > 10, NumericalError if the resolution guard trips.
SpectrumResult compute_spectrum(const IsotonicProblem& q, const RadialGrid& grid,
                                std::size_t levels, const SpectrumOptions& opt = {});

/// Independent configurations solved concurrently; same results as a loop.
std::vector<SpectrumResult> compute_spectra(std::span<const IsotonicProblem> problems,
                                            const RadialGrid& grid, std::size_t levels,
                                            const SpectrumOptions& opt = {});

/// Grid-refinement study on `grid` and `grid.refined()`.
struct RefinementStudy {
    std::vector<double> coarse_error;  // |numeric - analytic| per level
    std::vector<double> fine_error;
    std::vector<double> order;         // log2(coarse/fine)
    std::vector<double> extrapolated;  // (4 fine - coarse) / 3
};
RefinementStudy refinement_study(const IsotonicProblem& q, const RadialGrid& grid,
                                 std::size_t levels, InnerBoundary inner = InnerBoundary::regular);

/// Unnormalized y^(ell+1) exp(-omega y^2/2) 1F1(-n; ell+3/2; omega y^2).
double isotonic_profile(double y, std::size_t n, const IsotonicProblem& q);
/// Closed-form N_n with int_0^inf phi_n^2 dy = 1.
double analytic_norm_constant(std::size_t n, const IsotonicProblem& q);
/// N_n * isotonic_profile.
double analytic_phi(double y, std::size_t n, const IsotonicProblem& q);

struct WavefunctionResult {
    std::vector<double> y;    // interior nodes
    std::vector<double> phi;  // unit norm under integrate_density
    std::vector<double> psi;  // phi / sqrt(y)
    double norm_constant;     // grid-normalized N_n
    double energy;            // Etilde of the level
};

/// Closed form sampled on the interior nodes and normalized there. DomainError for n > 10.
WavefunctionResult analytic_wavefunction(std::size_t n, const IsotonicProblem& q,
                                         const RadialGrid& grid);

/// Eigenvector of the discretized problem by inverse iteration, normalized
/// like analytic_wavefunction; sign positive near the origin.
WavefunctionResult numeric_wavefunction(std::size_t n, const IsotonicProblem& q,
                                        const RadialGrid& grid,
                                        InnerBoundary inner = InnerBoundary::regular);

/// int a b dy under integrate_density.
double overlap(std::span<const double> a, std::span<const double> b, std::span<const double> y);

/// Sign changes, ignoring samples below 1e-8 max|phi|.
std::size_t count_nodes(std::span<const double> phi);

/// ptilde = 3 a y^2 / 4.
inline double ptilde_of_y(double y, double a) { return 0.75 * a * y * y; }
/// y = sqrt(4 ptilde / (3 a)).
double y_of_ptilde(double ptilde, double a);
/// Factor that makes psi(ptilde) = phi/sqrt(y) unit-normalized in d ptilde: sqrt(2/(3a)).
double momentum_density_factor(double a);

/// Residual of the first-derivative form
///     -(psi'' + psi'/y) + [(ell+1/2)^2/y^2 + omega^2 y^2] psi = E psi
/// for psi = phi/sqrt(y), with phi sampled on the interior nodes of `grid`.
/// Three-point derivatives; returns ||r|| / ||E psi|| over y in [lo, hi].
double radial_form_residual(std::span<const double> phi, double energy, const IsotonicProblem& q,
                            const RadialGrid& grid, double lo, double hi);

/// Symmetrized variable-mass kinetic operator in momentum space, x -> i(eta+1) d/dptilde:
///   -(eta+1)^2/(2m) [psi'' - (m'/m) psi' + (beta+1)/2 (2 m'^2/m^2 - m''/m) psi
///                    + alpha(alpha+beta+1) m'^2/m^2 psi] + U psi.
struct VonRoosOperator {
    double eta;
    AmbiguityParams ambiguity;
    std::function<double(double)> mass;
    std::function<double(double)> mass_d1;
    std::function<double(double)> mass_d2;
    std::function<double(double)> potential;

    /// Mass (6 a ptilde)^-1 and potential 3 b ptilde + 2/ptilde at eta = -3/2.
    static VonRoosOperator isotonic(const LienardParams& p, const AmbiguityParams& amb);

    /// H psi at nodes 3 .. n-4 of a uniform grid (sixth-order differences).
    std::vector<double> apply(std::span<const double> psi, std::span<const double> grid) const;
};

/// Uniform grid on [lo, hi] with n nodes.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// ||(H - E) psi|| / ||E psi|| over interior nodes of a uniform grid.
double operator_residual(const VonRoosOperator& op, std::span<const double> psi,
                         std::span<const double> grid, double energy);

/// Maps the closed-form level n to psi(ptilde) = phi_n(y)/sqrt(y) on `ptilde_grid`
/// and returns operator_residual against E = Etilde_n (eta+1)^2.
/// DomainError if the grid touches ptilde <= 0.
double vonroos_residual(std::size_t n, const QuantumSetup& setup,
                        std::span<const double> ptilde_grid);

/// Default momentum grid: y in [0.3, 6] / sqrt(omega) mapped to ptilde, 8001 nodes.
std::vector<double> default_ptilde_grid(const QuantumSetup& setup);

} // namespace lienard
