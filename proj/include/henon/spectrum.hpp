#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "henon/radial_solver.hpp"
#include "henon/tridiagonal.hpp"

namespace henon {

struct SpectrumOptions {
    double truncation_tol = 1e-10;   // |V(-T)| bound
    double max_truncation = 400.0;
    std::size_t intervals = 8192;    // M
    double eig_tol = 1e-8;           // relative, |Δλ| <= eig_tol·(1+|λ|)
    double stability_extension = 5.0;
    int max_extensions = 12;         // T grows by stability_extension until λ is truncation-stable
    bool check_stability = true;
    double geometric_ratio = 1.02;   // r-coordinate route
    double r_floor = 1e-8;
};

/// -ψ'' + V(t)ψ = λψ on [-T, 0] with Dirichlet ends, discretized on a uniform
/// grid of M intervals. V holds the M+1 nodal values, V.front() at t = -T.
struct SchrodingerProblem {
    double T = 0.0;
    std::size_t M = 0;
    std::vector<double> V;

    double step() const { return T / static_cast<double>(M); }
    double t(std::size_t i) const { return -T + step() * static_cast<double>(i); }
    std::vector<double> grid_t() const;

    /// Three-point finite-difference matrix on the M-1 interior nodes.
    SymTridiagonal matrix() const;

    static SchrodingerProblem constant_well(double T, std::size_t M, double depth);
};

struct RadialSpectrum {
    std::vector<double> lambdas;     // strictly increasing, all < 0
    double T = 0.0;
    std::size_t M = 0;
    double eig_tol = 0.0;
    // Largest eigenvalue change under T -> T + extension at fixed mesh width and
    // under M -> 2M (NaN when not checked), and the per-eigenvalue M -> 2M shifts.
    double truncation_change = 0.0;
    double refinement_change = 0.0;
    std::vector<double> refinement_deltas;
    // Set only by richardson_spectrum: lambdas are then extrapolated values and
    // these are their estimated errors.
    std::vector<double> error_estimates;

    int count() const { return static_cast<int>(lambdas.size()); }
};

/// Radial linearized potential q(r) = c·p·r^α|u(r)|^{p-1}; L = -Δ - q.
struct RadialPotential {
    std::function<double(double)> q;
    double r_floor = 1e-8;   // innermost positive node of the r-coordinate mesh
};

/// Smallest T (from the leading-order asymptotics, then verified) with |V(-T)| <= tol.
double truncation_length(const RadialProfile& profile, const SpectrumOptions& options = {});

/// Builds the t = log r problem with V(t) = -c p e^{(α+2)t}|u(e^t)|^{p-1}.
SchrodingerProblem build_schrodinger(const RadialProfile& profile, const SpectrumOptions& options = {});
SchrodingerProblem build_schrodinger(const RadialProfile& profile, double T, std::size_t M);

/// All negative eigenvalues by Sturm bisection; the count is the Sturm count at 0.
RadialSpectrum negative_spectrum(const SchrodingerProblem& problem, double eig_tol = 1e-8);

/// build_schrodinger + negative_spectrum. T starts from truncation_length and is
/// extended (mesh width held fixed) until re-solving at T + extension moves no
/// eigenvalue by more than eig_tol·(1+|λ|). The count is then re-certified at 2M.
/// Throws NonConvergence if the negative count changes or T cannot be settled.
RadialSpectrum radial_spectrum(const RadialProfile& profile, const SpectrumOptions& options = {});

/// Eigenvalues at M, 2M and 4M on the interval of `base`, combined by Richardson
/// extrapolation (the scheme is second order). The error estimate per eigenvalue
/// is the change between the (M, 2M) and (2M, 4M) extrapolants.
RadialSpectrum richardson_spectrum(const RadialProfile& profile, const RadialSpectrum& base, double eig_tol);

RadialPotential linearized_potential(const RadialProfile& profile, const SpectrumOptions& options = {});

/// Geometric mesh 0, r_floor, ..., 1 with ratio at most `ratio`.
std::vector<double> geometric_mesh(double r_floor, double ratio);

/// Linear-element matrix of ∫ r ψ'φ' + k² ψφ/r - r q ψφ on the geometric mesh.
/// For k = 0 the unknowns include r = 0; for k >= 1 the origin is Dirichlet.
SymTridiagonal mode_operator(const RadialPotential& potential, int k, double ratio);

/// Negative eigenvalue count of the regular radial linearized operator.
int radial_morse_index(const RadialProfile& profile, const SpectrumOptions& options = {});
int radial_morse_index(const RadialPotential& potential, const SpectrumOptions& options = {});

/// Negative eigenvalue count of the k-th angular mode operator (k >= 1).
int mode_negative_count(const RadialProfile& profile, int k, const SpectrumOptions& options = {});
int mode_negative_count(const RadialPotential& potential, int k, const SpectrumOptions& options = {});

} // namespace henon
