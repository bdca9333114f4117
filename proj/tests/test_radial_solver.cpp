#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "henon/errors.hpp"
#include "henon/radial_solver.hpp"

using namespace henon;

namespace {

// Independent oracle: classical RK4 in r with a fixed step, started from the
// two-term power series u = d - a r^m + b r^{2m} (m = α+2) at r0 = 1e-2.
double rk4_first_zero(double alpha, double p, double d, double h) {
    const double m = alpha + 2.0;
    const double a = std::pow(d, p) / (m * m);
    const double b = p * std::pow(d, 2.0 * p - 1.0) / (m * m * 4.0 * m * m);
    double r = 1e-2;
    std::array<double, 2> y{d - a * std::pow(r, m) + b * std::pow(r, 2 * m),
                            -m * a * std::pow(r, m - 1) + 2 * m * b * std::pow(r, 2 * m - 1)};
    auto f = [&](double s, const std::array<double, 2>& z) {
        return std::array<double, 2>{z[1], -z[1] / s - std::pow(s, alpha) * std::copysign(std::pow(std::abs(z[0]), p), z[0])};
    };
    auto step = [&](double s, const std::array<double, 2>& z, double k) {
        auto add = [](const std::array<double, 2>& u, const std::array<double, 2>& v, double c) {
            return std::array<double, 2>{u[0] + c * v[0], u[1] + c * v[1]};
        };
        const auto k1 = f(s, z);
        const auto k2 = f(s + k / 2, add(z, k1, k / 2));
        const auto k3 = f(s + k / 2, add(z, k2, k / 2));
        const auto k4 = f(s + k, add(z, k3, k));
        return std::array<double, 2>{z[0] + k / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                                     z[1] + k / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    };
    for (;;) {
        const auto next = step(r, y, h);
        if (next[0] < 0.0) {
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                (step(r, y, mid)[0] > 0.0 ? lo : hi) = mid;
            }
            return r + 0.5 * (lo + hi);
        }
        y = next;
        r += h;
    }
}

double first_zero(double alpha, double p, int zeros = 1) {
    return integrate_ivp(alpha, p, 1.0, 1e6, {}, zeros).zeros().at(zeros - 1);
}

} // namespace

TEST_CASE("near-origin behaviour follows the power series") {
    // α = 0, p = 3, d = 1: u = 1 - r²/4 + 3r⁴/64 - ...
    auto t0 = integrate_ivp(0.0, 3.0, 1.0, 2.0);
    for (double r : {1e-4, 1e-3, 1e-2}) {
        const auto [u, du] = t0.evaluate(r);
        CHECK(std::abs(u - (1.0 - r * r / 4.0 + 3.0 * std::pow(r, 4) / 64.0)) < 1e-12);
        CHECK(du == doctest::Approx(-r / 2.0).epsilon(1e-4));
    }
    // α = 2: u = 1 - r⁴/16 + ...
    auto t2 = integrate_ivp(2.0, 3.0, 1.0, 2.0);
    for (double r : {1e-3, 1e-2, 5e-2}) CHECK(std::abs(t2.evaluate(r).first - (1.0 - std::pow(r, 4) / 16.0)) < 1e-10);
    CHECK(t0.evaluate(0.0).first == 1.0);
    CHECK(t0.evaluate(0.0).second == 0.0);
}

TEST_CASE("first zero agrees with an independent RK4 integration") {
    for (auto [alpha, p] : {std::pair{0.0, 3.0}, std::pair{2.0, 5.0}, std::pair{1.0, 2.0}}) {
        const double oracle = rk4_first_zero(alpha, p, 1.0, 1e-4);
        CHECK(oracle == doctest::Approx(rk4_first_zero(alpha, p, 1.0, 2e-4)).epsilon(1e-11));
        CHECK(first_zero(alpha, p) == doctest::Approx(oracle).epsilon(1e-8));
    }
    // frozen oracle output for α = 0, p = 3 (equals the single-node central value)
    CHECK(rk4_first_zero(0.0, 3.0, 1.0, 1e-4) == doctest::Approx(3.57390098192989).epsilon(1e-10));
}

TEST_CASE("scaling closure: U(μr) rescaled solves the equation with the rescaled central value") {
    const double alpha = 1.0, p = 3.0, m = alpha + 2.0;
    auto base = integrate_ivp(alpha, p, 1.0, 20.0);
    for (double mu : {0.5, 2.0, 3.7}) {
        const double amp = std::pow(mu, m / (p - 1.0));
        auto scaled = integrate_ivp(alpha, p, amp, 20.0 / mu);
        for (double r : {0.1, 0.7, 1.3, 2.9}) {
            if (r * mu > base.r_end() || r > scaled.r_end()) continue;
            CHECK(scaled.evaluate(r).first == doctest::Approx(amp * base.evaluate(mu * r).first).scale(amp).epsilon(1e-8));
        }
    }
}

TEST_CASE("single-node and two-node profiles follow from the d = 1 trajectory") {
    for (auto [alpha, p] : {std::pair{0.0, 3.0}, std::pair{2.0, 3.0}, std::pair{0.5, 5.0}}) {
        const double z1 = first_zero(alpha, p), z2 = first_zero(alpha, p, 2);
        const auto one = solve_nodal({alpha, p, 1});
        CHECK(one.d == doctest::Approx(std::pow(z1, (alpha + 2) / (p - 1))).epsilon(1e-10));
        CHECK(one.nodal_radii.size() == 1);
        CHECK(one.nodal_radii.back() == 1.0);

        const auto two = solve_nodal({alpha, p, 2});
        REQUIRE(two.nodal_radii.size() == 2);
        CHECK(two.nodal_radii[0] == doctest::Approx(z1 / z2).epsilon(1e-10));
        CHECK(two.d == doctest::Approx(std::pow(z2, (alpha + 2) / (p - 1))).epsilon(1e-10));

        // re-integration from the reported central value lands on the same radii
        auto again = integrate_ivp(alpha, p, two.d, 2.0, {}, 2);
        CHECK(again.zeros()[0] == doctest::Approx(two.nodal_radii[0]).epsilon(1e-8));
        CHECK(again.zeros()[1] == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("frozen central values and nodal radius") {
    CHECK(solve_nodal({0.0, 3.0, 1}).d == doctest::Approx(3.573900982).epsilon(1e-9));
    CHECK(solve_nodal({2.0, 3.0, 1}).d == doctest::Approx(7.147801964).epsilon(1e-9));
    const auto two = solve_nodal({0.0, 3.0, 2});
    CHECK(two.d == doctest::Approx(12.28704321).epsilon(1e-9));
    CHECK(two.nodal_radii[0] == doctest::Approx(0.29086745451181184).epsilon(1e-9));
}

TEST_CASE("profile invariants across a parameter sample") {
    for (double alpha : {0.0, 1.0, 4.0})
        for (double p : {2.0, 5.0})
            for (int n : {1, 2, 3}) {
                CAPTURE(alpha);
                CAPTURE(p);
                CAPTURE(n);
                const auto prof = solve_nodal({alpha, p, n});
                CHECK_NOTHROW(check_profile(prof));
                CHECK(prof.d > 0.0);
                CHECK(prof.u.front() == prof.d);
                CHECK(count_sign_changes(prof) == n - 1);
                CHECK(static_cast<int>(prof.nodal_radii.size()) == n);
                CHECK(prof.grid.front() == 0.0);
                CHECK(prof.grid.back() == 1.0);
                for (std::size_t i = 1; i < prof.grid.size(); ++i) CHECK(prof.grid[i] > prof.grid[i - 1]);
                for (std::size_t i = 1; i < prof.nodal_radii.size(); ++i)
                    CHECK(prof.nodal_radii[i] > prof.nodal_radii[i - 1]);
                CHECK(std::abs(prof.u.back()) <= prof.tolerances.boundary_tol * prof.max_abs());
                CHECK(ode_residual(prof) <= prof.tolerances.residual_tol);
            }
}

TEST_CASE("signs alternate between nodal radii") {
    const auto prof = solve_nodal({4.0, 5.0, 3});
    REQUIRE(prof.nodal_radii.size() == 3);
    CHECK(count_sign_changes(prof) == 2);
    double lo = 0.0;
    int sign = 1;
    for (double z : prof.nodal_radii) {
        for (double f : {0.1, 0.5, 0.9}) CHECK(prof.evaluate(lo + f * (z - lo)).first * sign > 0.0);
        lo = z;
        sign = -sign;
    }
}

TEST_CASE("hermite evaluation is exact at nodes and accurate between them") {
    const auto prof = solve_nodal({1.0, 3.0, 2});
    for (std::size_t i = 0; i < prof.grid.size(); i += 37) {
        const auto [u, du] = prof.evaluate(prof.grid[i]);
        CHECK(u == prof.u[i]);
        CHECK(du == prof.du[i]);
    }
    const double scale = prof.max_abs();
    for (std::size_t i = 0; i + 1 < prof.grid.size(); i += 211) {
        if (prof.grid[i] < 1e-3) continue;
        const double mid = 0.5 * (prof.grid[i] + prof.grid[i + 1]);
        auto direct = integrate_ivp(1.0, 3.0, prof.d, mid);
        CHECK(std::abs(prof.evaluate(mid).first - direct.evaluate(mid).first) <= 1e-8 * scale);
    }
    CHECK_THROWS_AS(prof.evaluate(1.0 + 1e-9), std::out_of_range);
    CHECK_THROWS_AS(evaluate_profile(prof, -1e-9), std::out_of_range);
}

TEST_CASE("halving the integrator tolerance barely moves the profile") {
    SolverOptions loose, tight;
    loose.rtol = 1e-10;
    tight.rtol = 5e-11;
    for (int n : {1, 3}) {
        const auto a = solve_nodal({2.0, 3.0, n}, loose), b = solve_nodal({2.0, 3.0, n}, tight);
        CHECK(std::abs(a.d - b.d) <= 10.0 * loose.rtol * a.d);
        for (std::size_t j = 0; j < a.nodal_radii.size(); ++j)
            CHECK(std::abs(a.nodal_radii[j] - b.nodal_radii[j]) <= 10.0 * loose.rtol);
    }
}

TEST_CASE("invalid input and exhausted searches are reported") {
    CHECK_THROWS_AS(solve_nodal({-1.0, 3.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(solve_nodal({0.0, 1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(solve_nodal({0.0, 3.0, 0}), std::invalid_argument);

    SolverOptions stingy;
    stingy.r_max_per_node = 0.5;
    stingy.r_max_extensions = 0;
    CHECK_THROWS_AS(solve_nodal({0.0, 3.0, 2}, stingy), NonConvergence);

    auto prof = solve_nodal({0.0, 3.0, 2});
    prof.nodal_radii.pop_back();
    CHECK_THROWS(check_profile(prof));
}
