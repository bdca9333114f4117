#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "henon/errors.hpp"
#include "henon/ode.hpp"
#include "henon/quadrature.hpp"
#include "henon/tridiagonal.hpp"

using namespace henon;
using std::numbers::pi;

namespace {

SymTridiagonal laplacian(std::size_t n) {
    return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

} // namespace

TEST_CASE("dopri5 reproduces exponential decay and a harmonic oscillator") {
    using Stepper = ode::DormandPrince45<2>;
    Stepper osc([](double, const Stepper::State& y) { return Stepper::State{y[1], -y[0]}; }, {1e-11, 1e-13});
    auto nodes = osc.integrate(0.0, {0.0, 1.0}, 10.0, [](auto&, auto&) { return true; });
    const auto& last = nodes.back();
    CHECK(last.t == 10.0);
    CHECK(last.y[0] == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
    CHECK(last.y[1] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));

    // re-stepping inside an accepted step is as accurate as the grid itself
    for (std::size_t i = 0; i + 1 < nodes.size(); i += 7) {
        const double t = nodes[i].t + 0.37 * nodes[i].h;
        CHECK(std::abs(osc.restep(nodes[i], t)[0] - std::sin(t)) < 1e-9);
    }

    using S1 = ode::DormandPrince45<1>;
    S1 decay([](double, const S1::State& y) { return S1::State{-y[0]}; }, {1e-10, 1e-14});
    auto dn = decay.integrate(0.0, {1.0}, 5.0, [](auto&, auto&) { return true; });
    CHECK(dn.back().y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-8));
}

TEST_CASE("dopri5 observer can stop early and blow-up raises NonConvergence") {
    using S1 = ode::DormandPrince45<1>;
    S1 lin([](double, const S1::State&) { return S1::State{1.0}; });
    auto nodes = lin.integrate(0.0, {0.0}, 100.0, [](auto&, auto& right) { return right.y[0] < 1.0; });
    CHECK(nodes.back().y[0] >= 1.0);
    CHECK(nodes.back().t < 100.0);

    // y' = y² from y(0) = 1 blows up at t = 1
    S1 blow([](double, const S1::State& y) { return S1::State{y[0] * y[0]}; });
    CHECK_THROWS_AS(blow.integrate(0.0, {1.0}, 2.0, [](auto&, auto&) { return true; }), NonConvergence);
}

TEST_CASE("gauss-legendre is exact through degree nine") {
    for (int deg = 0; deg <= 9; ++deg) {
        const double got = quad::gauss_legendre([&](double x) { return std::pow(x, deg); }, 0.0, 2.0);
        CHECK(got == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-14));
    }
}

TEST_CASE("adaptive simpson handles smooth, kinked and weakly singular integrands") {
    CHECK(quad::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-11));

    const std::vector<double> br{0.0, 0.3, 1.0};
    const double kink = quad::adaptive_simpson([](double x) { return std::abs(x - 0.3); }, std::span<const double>(br));
    CHECK(kink == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));

    // x^{3/2}: second derivative singular at the left end, like r^α weights
    CHECK(quad::adaptive_simpson([](double x) { return x * std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(0.4).epsilon(1e-10));

    CHECK(quad::adaptive_simpson([](double x) { return x; }, 1.0, 1.0) == 0.0);

    // a jump away from every breakpoint cannot be resolved
    quad::SimpsonOptions tight;
    tight.max_depth = 12;
    CHECK_THROWS_AS(quad::adaptive_simpson([](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; }, 0.0, 1.0, tight),
                    NonConvergence);
}

TEST_CASE("sturm counts and bisection match the discrete laplacian spectrum") {
    const std::size_t n = 10;
    const auto a = laplacian(n);
    for (int j = 1; j <= static_cast<int>(n); ++j) {
        const double exact = 2.0 - 2.0 * std::cos(j * pi / (n + 1));
        CHECK(sturm_count(a, exact - 1e-9) == j - 1);
        CHECK(sturm_count(a, exact + 1e-9) == j);
        CHECK(bisect_eigenvalue(a, j, 0.0, 4.0, 1e-14) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("inertia and pencil counts") {
    const SymTridiagonal d{{1.0, -2.0, 3.0, -4.0}, {0.0, 0.0, 0.0}};
    const Inertia in = inertia(d);
    CHECK(in.negative == 2);
    CHECK(in.positive == 2);
    CHECK(in.zero == 0);

    const SymTridiagonal z{{1.0, 0.0, 2.0}, {0.0, 0.0}};
    CHECK(inertia(z).zero == 1);

    // Sylvester: the shifted laplacian has as many negative pivots as eigenvalues below the shift
    const auto a = laplacian(20);
    SymTridiagonal shifted = a;
    for (auto& x : shifted.diag) x -= 1.0;
    CHECK(inertia(shifted).negative == sturm_count(a, 1.0));

    const SymTridiagonal A{{1.0, 2.0, 3.0}, {0.0, 0.0}};
    const SymTridiagonal B{{2.0, 2.0, 2.0}, {0.0, 0.0}};
    CHECK(pencil_count(A, B, 1.2) == 2);
    CHECK(pencil_count(A, B, 0.4) == 0);
    CHECK(pencil_count(A, B, 2.0) == 3);
}
