#pragma once

#include <functional>
#include <string>
#include <vector>

#include "henon/radial_solver.hpp"

namespace henon {

/// Radial part of the map y ↦ |y|^{κ-1} y, i.e. r ↦ r^κ.
struct KappaMap {
    double kappa = 1.0;

    explicit KappaMap(double k);

    double operator()(double r) const;
    KappaMap inverse() const { return KappaMap(1.0 / kappa); }

    /// κ = (β+2)/(α+2), the exponent relating solutions of the α and β problems.
    static KappaMap between(double alpha, double beta);
};

double radial_map(double kappa, double r);

/// Maps a solution of the α problem to the solution of the β problem with the
/// same number of nodal sets: u_β(s) = κ^{2/(p-1)} u_α(s^κ), sampled on the
/// image s = r^{1/κ} of the original grid.
RadialProfile transform_solution(const RadialProfile& profile, double beta);

/// w(r, θ) = g(r) cos(kθ) on r <= support, extended by zero beyond it.
struct TestFunction {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> dg;
    int k = 0;
    double support = 1.0;
};

/// The fixed battery: {sin πr, r(1-r), sin 2πr, r²(1-r)} × k ∈ {0,1,2,3};
/// members with k >= 1 are multiplied by r so that g(0) = 0.
std::vector<TestFunction> standard_battery();

/// The profile restricted to its first nodal set and extended by zero.
TestFunction nodal_restriction(const RadialProfile& profile);

/// w ∘ T_κ: radial part g(r^κ), same angular mode. Requires κ >= 1.
TestFunction compose(const TestFunction& w, double kappa);

/// c_k ∫₀¹ (g'² + k² g²/r²) r dr with c_0 = 2π and c_k = π otherwise.
double dirichlet_energy(const TestFunction& w);

/// Q(w) = ∫|∇w|² - ∫ c p |x|^α |u|^{p-1} w² after angular reduction.
double quadratic_form(const RadialProfile& profile, const TestFunction& w);

struct ComparisonEntry {
    std::string g_name;
    int k = 0;
    double Q_alpha = 0.0;
    double Q_beta_of_wk = 0.0;
    double kappa = 1.0;
    double slack = 0.0;   // κ Q_α(w) - Q_β(w_κ)
    bool pass = false;
};

struct ComparisonReport {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<ComparisonEntry> entries;

    bool passed() const;
};

/// Compares Q_β(w_κ) with κ Q_α(w) for every battery member, using the β
/// solution obtained from transform_solution. Radial members must agree to
/// form_tol = 1e-7 (1 + |Q_α|); the others must satisfy Q_β(w_κ) <= κ Q_α(w) + form_tol.
ComparisonReport verify_form_comparison(const RadialProfile& profile_alpha, double beta,
                                        const std::vector<TestFunction>& battery);

} // namespace henon
