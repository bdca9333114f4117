#include "henon/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "henon/errors.hpp"
#include "henon/quadrature.hpp"

namespace henon {

namespace {

// |U|^{p-1} U · e^{(α+2)s} evaluated in log form to avoid overflow of either factor.
double log_forcing(double alpha, double p, double coefficient, double s, double u) {
    if (u == 0.0) return 0.0;
    const double mag = std::exp((alpha + 2.0) * s + p * std::log(std::abs(u)));
    return std::copysign(coefficient * mag, u);
}

} // namespace

std::array<double, 2> ShootingTrajectory::series(double r) const {
    const double a2 = params_.alpha + 2.0;
    const double fd = params_.coefficient * std::pow(d_, params_.p);
    const double ra = std::pow(r, a2);
    return {d_ - fd * ra / (a2 * a2), -fd * ra / (r * a2)};
}

double ShootingTrajectory::r_end() const { return std::exp(nodes_.back().t); }

std::vector<double> ShootingTrajectory::grid() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(std::exp(n.t));
    return out;
}

std::vector<double> ShootingTrajectory::u() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.y[0]);
    return out;
}

std::vector<double> ShootingTrajectory::du() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.y[1] / std::exp(n.t));
    return out;
}

std::array<double, 2> ShootingTrajectory::evaluate_log(double s) const {
    if (s < nodes_.front().t) {
        const double r = std::exp(s);
        const auto [u, du] = series(r);
        return {u, du * r};
    }
    if (s > nodes_.back().t) throw std::out_of_range("evaluation beyond the end of the trajectory");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                               [](double v, const Stepper::Node& n) { return v < n.t; });
    const auto& node = *std::prev(it);
    if (node.h == 0.0) return node.y;
    return stepper_->restep(node, s);
}

std::pair<double, double> ShootingTrajectory::evaluate(double r) const {
    if (r < 0.0) throw std::out_of_range("negative radius");
    if (r == 0.0) return {d_, 0.0};
    if (r <= eps_) {
        const auto s = series(r);
        return {s[0], s[1]};
    }
    const auto y = evaluate_log(std::log(r));
    return {y[0], y[1] / r};
}

ShootingTrajectory integrate_ivp(const HenonParams& params, double d, double r_max,
                                 const SolverOptions& options, std::optional<int> max_zeros) {
    params.validate();
    if (!(d > 0.0)) throw std::invalid_argument("central value d must be positive");
    if (!(r_max > options.series_start))
        throw std::invalid_argument("r_max must exceed the series start radius");

    ShootingTrajectory traj;
    traj.params_ = params;
    traj.d_ = d;
    traj.eps_ = options.series_start;

    // Size of the first neglected series term, c² p d^{2p-1} ε^{2α+4} / ((α+2)²(2α+4)²).
    const double a2 = params.alpha + 2.0;
    const double eps = options.series_start;
    const double lead = params.coefficient * std::pow(d, params.p) / (a2 * a2);
    const double next = params.coefficient * params.p * std::pow(d, params.p - 1.0) * lead /
                        (4.0 * a2 * a2) * std::pow(eps, 2.0 * a2);
    if (next > 1e-2 * options.rtol * d)
        throw NonConvergence("series start invalid: neglected term " + std::to_string(next) +
                             " exceeds the integration tolerance at eps = " + std::to_string(eps));

    const double alpha = params.alpha, p = params.p, c = params.coefficient;
    ShootingTrajectory::Stepper stepper(
        [alpha, p, c](double s, const std::array<double, 2>& y) -> std::array<double, 2> {
            return {y[1], -log_forcing(alpha, p, c, s, y[0])};
        },
        ode::Tolerances{options.rtol, options.atol, 1e-14, 2'000'000, {options.atol, options.flux_atol}});
    traj.stepper_.emplace(stepper);

    const auto start = traj.series(eps);
    const std::array<double, 2> y0{start[0], start[1] * eps};
    const double s0 = std::log(eps);
    const double s1 = std::log(r_max);

    auto observer = [&](const ShootingTrajectory::Stepper::Node& left,
                        const ShootingTrajectory::Stepper::Node& right) {
        const double ul = left.y[0], ur = right.y[0];
        if (ur == 0.0) {
            traj.zeros_.push_back(std::exp(right.t));
        } else if (ul != 0.0 && std::signbit(ul) != std::signbit(ur)) {
            double lo = left.t, hi = right.t;
            const bool lo_negative = std::signbit(ul);
            while (hi - lo > options.root_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double um = stepper.restep(left, mid)[0];
                if (um == 0.0) {
                    lo = hi = mid;
                    break;
                }
                (std::signbit(um) == lo_negative ? lo : hi) = mid;
            }
            traj.zeros_.push_back(std::exp(0.5 * (lo + hi)));
        }
        return !(max_zeros && static_cast<int>(traj.zeros_.size()) >= *max_zeros);
    };
    traj.nodes_ = stepper.integrate(s0, y0, s1, observer);
    return traj;
}

ShootingTrajectory integrate_ivp(double alpha, double p, double d, double r_max,
                                 const SolverOptions& options, std::optional<int> max_zeros) {
    return integrate_ivp(HenonParams{alpha, p, 1, 1.0}, d, r_max, options, max_zeros);
}

RadialProfile solve_nodal(const HenonParams& params, const SolverOptions& options) {
    params.validate();
    const int n = params.n_nodal;

    double r_max = options.r_max_per_node * n;
    std::optional<ShootingTrajectory> traj;
    for (int attempt = 0; attempt <= options.r_max_extensions; ++attempt) {
        traj = integrate_ivp(params, 1.0, r_max, options, n);
        if (static_cast<int>(traj->zeros().size()) >= n) break;
        r_max *= r_max;
    }
    if (static_cast<int>(traj->zeros().size()) < n)
        throw NonConvergence("found only " + std::to_string(traj->zeros().size()) + " of " +
                             std::to_string(n) + " zeros before r = " + std::to_string(traj->r_end()));

    const double mu = traj->zeros()[n - 1];
    const double log_mu = std::log(mu);
    const double d = std::pow(mu, (params.alpha + 2.0) / (params.p - 1.0));

    RadialProfile prof;
    prof.params = params;
    prof.d = d;
    prof.tolerances = {options.rtol, options.atol, options.root_tol, options.boundary_tol,
                       options.residual_tol};
    for (int j = 0; j < n - 1; ++j) prof.nodal_radii.push_back(traj->zeros()[j] / mu);
    prof.nodal_radii.push_back(1.0);

    // (radius, is_nodal); nodal radii win over nearby samples.
    std::vector<std::pair<double, bool>> pts;
    const std::size_t nu = std::max<std::size_t>(options.uniform_points, 2);
    for (std::size_t i = 1; i + 1 < nu; ++i) pts.emplace_back(static_cast<double>(i) / (nu - 1), false);
    for (const auto& node : traj->nodes()) {
        for (int j = 0; j < options.step_subdivisions && node.h > 0.0; ++j) {
            const double r = std::exp(node.t + node.h * j / options.step_subdivisions - log_mu);
            if (r < 1.0) pts.emplace_back(r, false);
        }
    }
    for (double z : prof.nodal_radii) pts.emplace_back(z, true);
    std::sort(pts.begin(), pts.end());

    std::vector<double> grid{0.0};
    bool last_nodal = false;
    for (const auto& [r, nodal] : pts) {
        if (std::abs(r - grid.back()) <= 1e-12 * r) {
            if (nodal && !last_nodal && grid.size() > 1) grid.back() = r, last_nodal = true;
            continue;
        }
        grid.push_back(r);
        last_nodal = nodal;
    }
    if (grid.back() != 1.0) throw std::logic_error("profile grid must end at the boundary");

    prof.grid = grid;
    prof.u.resize(grid.size());
    prof.du.resize(grid.size());
    prof.u[0] = d;
    prof.du[0] = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double r = grid[i];
        const double rho = mu * r;
        if (rho <= options.series_start) {
            const auto [U, dU] = traj->evaluate(rho);
            prof.u[i] = d * U;
            prof.du[i] = d * mu * dU;
        } else {
            const auto y = traj->evaluate_log(std::log(r) + log_mu);
            prof.u[i] = d * y[0];
            prof.du[i] = d * y[1] / r;
        }
    }

    check_profile(prof);
    return prof;
}

std::pair<double, double> RadialProfile::evaluate(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::out_of_range("radius outside [0, 1]: " + std::to_string(r));
    auto it = std::upper_bound(grid.begin(), grid.end(), r);
    std::size_t i = static_cast<std::size_t>(std::distance(grid.begin(), it)) - 1;
    if (grid[i] == r) return {u[i], du[i]};
    const double h = grid[i + 1] - grid[i];
    const double t = (r - grid[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double val = (2 * t3 - 3 * t2 + 1) * u[i] + (t3 - 2 * t2 + t) * h * du[i] +
                       (-2 * t3 + 3 * t2) * u[i + 1] + (t3 - t2) * h * du[i + 1];
    const double der = (6 * t2 - 6 * t) / h * u[i] + (3 * t2 - 4 * t + 1) * du[i] +
                       (-6 * t2 + 6 * t) / h * u[i + 1] + (3 * t2 - 2 * t) * du[i + 1];
    return {val, der};
}

double RadialProfile::max_abs() const {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

std::pair<double, double> evaluate_profile(const RadialProfile& profile, double r) {
    return profile.evaluate(r);
}

double ode_residual(const RadialProfile& profile) {
    const auto& P = profile.params;
    const double scale = P.coefficient * std::pow(profile.max_abs(), P.p);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
        const double a = profile.grid[i], b = profile.grid[i + 1];
        const double flux = b * profile.du[i + 1] - a * profile.du[i];
        const double source = quad::gauss_legendre(
            [&](double s) {
                const double us = profile.evaluate(s).first;
                return s * P.weight(s) * P.nonlinearity(us);
            },
            a, b);
        const double res = std::abs(flux + source) / ((b - a) * 0.5 * (a + b));
        worst = std::max(worst, res / scale);
    }
    return worst;
}

int count_sign_changes(const RadialProfile& profile) {
    const double floor = profile.tolerances.boundary_tol * profile.max_abs();
    int changes = 0;
    int last = 0;
    for (std::size_t i = 0; i + 1 < profile.grid.size(); ++i) {
        const double v = profile.u[i];
        if (std::abs(v) <= floor) continue;
        const int s = v > 0 ? 1 : -1;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

void check_profile(const RadialProfile& prof) {
    const auto& g = prof.grid;
    const std::size_t m = g.size();
    if (m < 2 || prof.u.size() != m || prof.du.size() != m)
        throw std::logic_error("profile arrays must have equal length >= 2");
    if (g.front() != 0.0 || g.back() != 1.0) throw std::logic_error("profile grid must span [0, 1]");
    if (!std::is_sorted(g.begin(), g.end(), std::less_equal<>{}) ||
        std::adjacent_find(g.begin(), g.end()) != g.end())
        throw std::logic_error("profile grid must be strictly increasing");
    const int n = prof.params.n_nodal;
    if (static_cast<int>(prof.nodal_radii.size()) != n)
        throw std::logic_error("expected " + std::to_string(n) + " nodal radii");
    if (prof.nodal_radii.back() != 1.0) throw std::logic_error("last nodal radius must be 1");
    for (double z : prof.nodal_radii)
        if (!std::binary_search(g.begin(), g.end(), z))
            throw std::logic_error("nodal radius " + std::to_string(z) + " is not a grid point");
    if (!(prof.u[0] > 0.0) || prof.u[0] != prof.d) throw std::logic_error("u(0) must equal d > 0");
    if (prof.du[0] != 0.0) throw std::logic_error("u'(0) must vanish");

    const double scale = prof.max_abs();
    if (std::abs(prof.u.back()) > prof.tolerances.boundary_tol * scale)
        throw NonConvergence("Dirichlet condition violated: u(1) = " + std::to_string(prof.u.back()));
    if (count_sign_changes(prof) != n - 1)
        throw NonConvergence("expected " + std::to_string(n - 1) + " sign changes, found " +
                             std::to_string(count_sign_changes(prof)));
    double left = 0.0;
    for (int j = 0; j < n; ++j) {
        const double right = prof.nodal_radii[j];
        const double mid = prof.evaluate(0.5 * (left + right)).first;
        if ((j % 2 == 0) != (mid > 0.0))
            throw NonConvergence("sign does not alternate on nodal set " + std::to_string(j + 1));
        left = right;
    }
    const double res = ode_residual(prof);
    if (res > prof.tolerances.residual_tol)
        throw NonConvergence("ODE residual " + std::to_string(res) + " exceeds tolerance");
}

} // namespace henon
