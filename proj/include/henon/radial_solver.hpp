#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "henon/ode.hpp"
#include "henon/params.hpp"

namespace henon {

struct SolverOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double flux_atol = 1e-22;       // on W = r u', which is O(r^{α+2}) near the origin
    double series_start = 1e-6;     // ε, first radius reached by the power series
    double root_tol = 1e-12;        // on log r, i.e. relative on r
    double boundary_tol = 1e-9;     // relative to u(0)
    double residual_tol = 1e-6;     // relative to c·max|u|^p
    std::size_t uniform_points = 2049;
    int step_subdivisions = 4;      // samples per integrator step in the output grid
    double r_max_per_node = 4.0;    // initial r_max = r_max_per_node · n
    int r_max_extensions = 4;       // each extension squares r_max
};

/// Raw initial-value trajectory with u(0) = d, before any normalization.
/// Internally the equation is integrated in s = log r, where it reads
///   U_ss = -c e^{(α+2)s} |U|^{p-1} U,
/// and W = U_s = r U'(r).
class ShootingTrajectory {
public:
    using Stepper = ode::DormandPrince45<2>;

    double alpha() const { return params_.alpha; }
    double p() const { return params_.p; }
    double central_value() const { return d_; }
    double series_start() const { return eps_; }
    double r_end() const;

    /// Radii of accepted integrator nodes (first entry is ε).
    std::vector<double> grid() const;
    std::vector<double> u() const;
    std::vector<double> du() const;

    /// Sign-change radii, strictly increasing.
    const std::vector<double>& zeros() const { return zeros_; }

    /// (u, u') at radius r in [0, r_end()].
    std::pair<double, double> evaluate(double r) const;

    /// (U, W) at s = log r, for s in [log ε, log r_end()].
    std::array<double, 2> evaluate_log(double s) const;

    /// Accepted nodes in the log variable.
    const std::vector<Stepper::Node>& nodes() const { return nodes_; }

private:
    friend ShootingTrajectory integrate_ivp(const HenonParams&, double, double, const SolverOptions&,
                                            std::optional<int>);
    HenonParams params_;
    double d_ = 1.0;
    double eps_ = 1e-6;
    std::optional<Stepper> stepper_;
    std::vector<Stepper::Node> nodes_;
    std::vector<double> zeros_;

    std::array<double, 2> series(double r) const;
};

/// Integrates -Δu = c r^α |u|^{p-1}u radially from the origin with u(0) = d.
/// Only params.alpha, params.p and params.coefficient are used. Stops at r_max
/// or right after `max_zeros` sign changes have been located.
ShootingTrajectory integrate_ivp(const HenonParams& params, double d, double r_max,
                                 const SolverOptions& options = {},
                                 std::optional<int> max_zeros = std::nullopt);

/// Convenience overload with coefficient 1.
ShootingTrajectory integrate_ivp(double alpha, double p, double d, double r_max,
                                 const SolverOptions& options = {},
                                 std::optional<int> max_zeros = std::nullopt);

struct ProfileTolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double root_tol = 1e-12;
    double boundary_tol = 1e-9;
    double residual_tol = 1e-6;

    friend bool operator==(const ProfileTolerances&, const ProfileTolerances&) = default;
};

/// Radial solution on the unit disk, sampled on a grid that contains every
/// nodal radius. Values between nodes come from cubic Hermite interpolation.
struct RadialProfile {
    HenonParams params;
    double d = 0.0;
    std::vector<double> grid;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> nodal_radii;
    ProfileTolerances tolerances;

    std::pair<double, double> evaluate(double r) const;
    double max_abs() const;

    friend bool operator==(const RadialProfile&, const RadialProfile&) = default;
};

/// Solution of (P_α) with exactly n nodal sets and u(0) > 0, obtained from
/// a single d = 1 trajectory and the scaling u(r) = μ^{(α+2)/(p-1)} U(μr).
RadialProfile solve_nodal(const HenonParams& params, const SolverOptions& options = {});

/// Cubic Hermite interpolation of (u, u'); throws std::out_of_range outside [0, 1].
std::pair<double, double> evaluate_profile(const RadialProfile& profile, double r);

/// Largest cell-averaged residual of (r u')' + c r^{1+α} f(u) = 0, divided by
/// the cell midpoint radius and by c·max|u|^p.
double ode_residual(const RadialProfile& profile);

/// Checks every RadialProfile invariant; throws NonConvergence on the
/// numerical ones and std::logic_error on structural ones.
void check_profile(const RadialProfile& profile);

/// Number of strict sign changes of u on the grid interior.
int count_sign_changes(const RadialProfile& profile);

} // namespace henon
