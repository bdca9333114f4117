#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "henon/errors.hpp"
#include "henon/radial_solver.hpp"
#include "henon/spectrum.hpp"

using namespace henon;

namespace {

// Independent oracle in the radial variable: linear elements on a geometric
// mesh for the pencil  ∫ r ψ'φ' - ∫ r q ψφ = λ ∫ ψφ / r  on [e^{-T}, 1], both
// ends Dirichlet. Negative counts come from a local LDLᵀ of A - λB.
struct Pencil {
    std::vector<double> a_diag, a_off, b_diag, b_off;

    int count_below(double lam) const {
        int neg = 0;
        double piv = 1.0;
        for (std::size_t i = 0; i < a_diag.size(); ++i) {
            double d = a_diag[i] - lam * b_diag[i];
            if (i > 0) {
                const double o = a_off[i - 1] - lam * b_off[i - 1];
                d -= o * o / piv;
            }
            if (d == 0.0) d = 1e-300;
            if (d < 0.0) ++neg;
            piv = d;
        }
        return neg;
    }

    double eigenvalue(int j, double lo, double hi) const {
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (count_below(mid) >= j ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

Pencil r_pencil(const RadialProfile& prof, double T, double ratio) {
    const auto& P = prof.params;
    std::vector<double> x{std::exp(-T)};
    while (x.back() < 1.0) x.push_back(std::min(1.0, x.back() * ratio));
    auto q = [&](double r) { return P.coefficient * P.p * std::pow(r, P.alpha) * std::pow(std::abs(prof.evaluate(r).first), P.p - 1.0); };
    const std::size_t n = x.size();
    std::vector<double> ad(n, 0.0), ao(n - 1, 0.0), bd(n, 0.0), bo(n - 1, 0.0);
    static constexpr double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double a = x[e], b = x[e + 1], h = b - a;
        double k00 = 0, k01 = 0, k11 = 0, m00 = 0, m01 = 0, m11 = 0, stiff = 0;
        for (int g = 0; g < 3; ++g) {
            const double r = 0.5 * (a + b) + 0.5 * h * gx[g], w = 0.5 * h * gw[g];
            const double n0 = (b - r) / h, n1 = (r - a) / h;
            stiff += w * r / (h * h);
            const double rq = w * r * q(r), inv = w / r;
            k00 -= rq * n0 * n0;
            k01 -= rq * n0 * n1;
            k11 -= rq * n1 * n1;
            m00 += inv * n0 * n0;
            m01 += inv * n0 * n1;
            m11 += inv * n1 * n1;
        }
        ad[e] += stiff + k00;
        ad[e + 1] += stiff + k11;
        ao[e] += -stiff + k01;
        bd[e] += m00;
        bd[e + 1] += m11;
        bo[e] += m01;
    }
    // drop the Dirichlet end nodes
    Pencil pen;
    pen.a_diag.assign(ad.begin() + 1, ad.end() - 1);
    pen.b_diag.assign(bd.begin() + 1, bd.end() - 1);
    pen.a_off.assign(ao.begin() + 1, ao.end() - 1);
    pen.b_off.assign(bo.begin() + 1, bo.end() - 1);
    return pen;
}

} // namespace

TEST_CASE("square well eigenvalues and second-order convergence") {
    const double T = std::numbers::pi;
    auto sp = negative_spectrum(SchrodingerProblem::constant_well(T, 8192, -5.0), 1e-13);
    REQUIRE(sp.count() == 2);
    CHECK(std::abs(sp.lambdas[0] + 4.0) <= 1e-6);
    CHECK(std::abs(sp.lambdas[1] + 1.0) <= 1e-6);

    double prev = 0.0;
    for (std::size_t M : {256u, 512u, 1024u, 2048u}) {
        const double err = std::abs(negative_spectrum(SchrodingerProblem::constant_well(T, M, -5.0), 1e-14).lambdas[0] + 4.0);
        if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.025));
        prev = err;
    }
}

TEST_CASE("zero potential has no negative spectrum") {
    const SchrodingerProblem zero{10.0, 512, std::vector<double>(513, 0.0)};
    CHECK(negative_spectrum(zero).count() == 0);
    CHECK(radial_morse_index(RadialPotential{[](double) { return 0.0; }}) == 0);
    CHECK(mode_negative_count(RadialPotential{[](double) { return 0.0; }}, 1) == 0);
    CHECK_THROWS_AS(negative_spectrum(SchrodingerProblem{1.0, 4, {0.0, 0.0}}), std::logic_error);
}

TEST_CASE("potential in log r: sign, truncation, boundary and pointwise values") {
    const auto prof = solve_nodal({1.0, 3.0, 2});
    SpectrumOptions opt;
    const auto pb = build_schrodinger(prof, opt);
    CHECK(pb.V.size() == pb.M + 1);
    CHECK(std::abs(pb.V.front()) <= opt.truncation_tol);
    CHECK(std::abs(pb.V.back()) < 1e-12);
    for (double v : pb.V) CHECK(v <= 0.0);
    for (std::size_t i = 0; i <= pb.M; i += 97) {
        const double t = pb.t(i);
        const double u = prof.evaluate(std::exp(t)).first;
        CHECK(pb.V[i] == doctest::Approx(-3.0 * std::exp(3.0 * t) * u * u).epsilon(1e-12));
    }
    CHECK(truncation_length(prof, opt) == doctest::Approx(pb.T).epsilon(1e-12));

    opt.truncation_tol = 1e-300;
    opt.max_truncation = 50.0;
    CHECK_THROWS_AS(truncation_length(prof, opt), NonConvergence);
}

TEST_CASE("t-route eigenvalues agree with an independent r-coordinate pencil") {
    const auto prof = solve_nodal({0.0, 3.0, 2});
    const auto sp = radial_spectrum(prof);
    REQUIRE(sp.count() == 2);

    const Pencil fine = r_pencil(prof, 20.0, 1.001);
    CHECK(fine.count_below(0.0) == 2);
    const double l1 = fine.eigenvalue(1, -100.0, 0.0), l2 = fine.eigenvalue(2, -100.0, 0.0);
    // frozen oracle output
    CHECK(l1 == doctest::Approx(-14.7700121727034).epsilon(1e-9));
    CHECK(l2 == doctest::Approx(-0.907970263832691).epsilon(1e-9));
    CHECK(sp.lambdas[0] == doctest::Approx(l1).epsilon(1e-4));
    CHECK(sp.lambdas[1] == doctest::Approx(l2).epsilon(1e-4));
}

TEST_CASE("frozen radial spectra") {
    const auto s1 = radial_spectrum(solve_nodal({0.0, 3.0, 1}));
    REQUIRE(s1.count() == 1);
    CHECK(s1.lambdas[0] == doctest::Approx(-0.591482).epsilon(1e-5));

    const auto s2 = radial_spectrum(solve_nodal({0.0, 3.0, 2}));
    REQUIRE(s2.count() == 2);
    CHECK(s2.lambdas[0] == doctest::Approx(-14.770056841247387).epsilon(1e-7));
    CHECK(s2.lambdas[1] == doctest::Approx(-0.90797193756660488).epsilon(1e-7));
}

TEST_CASE("spectrum invariants: ordering, truncation and refinement stability") {
    for (auto [alpha, p, n] : {std::tuple{0.0, 2.0, 3}, std::tuple{2.0, 5.0, 2}, std::tuple{6.0, 3.0, 1}}) {
        CAPTURE(alpha);
        CAPTURE(n);
        const auto prof = solve_nodal({alpha, p, n});
        SpectrumOptions opt;
        const auto sp = radial_spectrum(prof, opt);
        CHECK(sp.count() == n);
        double worst = 0.0;
        for (int j = 0; j < sp.count(); ++j) {
            CHECK(sp.lambdas[j] < 0.0);
            if (j > 0) CHECK(sp.lambdas[j] > sp.lambdas[j - 1]);
            worst = std::max(worst, std::abs(sp.lambdas[j]));
        }
        CHECK(sp.truncation_change <= opt.eig_tol * (1.0 + worst));
        CHECK(sp.refinement_deltas.size() == sp.lambdas.size());
        CHECK(negative_spectrum(build_schrodinger(prof, sp.T, 2 * sp.M)).count() == sp.count());
        CHECK(negative_spectrum(build_schrodinger(prof, sp.T + opt.stability_extension, sp.M)).count() == sp.count());
    }
}

TEST_CASE("refinement is second order and Richardson extrapolation sharpens it") {
    const auto prof = solve_nodal({0.0, 3.0, 2});
    const auto base = radial_spectrum(prof);
    auto at = [&](std::size_t M) { return negative_spectrum(build_schrodinger(prof, base.T, M), 1e-12).lambdas; };
    const auto a = at(base.M), b = at(2 * base.M), c = at(4 * base.M);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK((a[j] - b[j]) / (b[j] - c[j]) == doctest::Approx(4.0).epsilon(0.05));

    const auto rich = richardson_spectrum(prof, base, 1e-12);
    CHECK(rich.M == 4 * base.M);
    REQUIRE(rich.count() == base.count());
    REQUIRE(rich.error_estimates.size() == rich.lambdas.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(rich.error_estimates[j] < std::abs(a[j] - c[j]));
        CHECK(std::abs(rich.lambdas[j] - c[j]) < std::abs(a[j] - c[j]));
    }
}

TEST_CASE("both routes give m_rad = n") {
    for (auto [alpha, p, n] : {std::tuple{0.0, 3.0, 1}, std::tuple{1.0, 2.0, 2}, std::tuple{4.0, 5.0, 3}}) {
        const auto prof = solve_nodal({alpha, p, n});
        CHECK(radial_morse_index(prof) == n);
        CHECK(radial_spectrum(prof).count() == n);
    }
}

TEST_CASE("mode counts match the decomposition and decrease in k") {
    for (auto [alpha, n] : {std::pair{0.0, 2}, std::pair{2.0, 2}, std::pair{1.0, 3}}) {
        const auto prof = solve_nodal({alpha, 3.0, n});
        const auto sp = radial_spectrum(prof);
        int prev = n;
        const int k_max = static_cast<int>(std::ceil(std::sqrt(-sp.lambdas.front()))) + 1;
        for (int k = 1; k <= k_max; ++k) {
            int expected = 0;
            for (double lam : sp.lambdas) expected += lam + double(k) * k < 0.0;
            const int got = mode_negative_count(prof, k);
            CHECK(got == expected);
            CHECK(got <= prev);
            prev = got;
        }
        CHECK(prev == 0);
    }
    CHECK_THROWS_AS(mode_negative_count(solve_nodal({0.0, 3.0, 1}), 0), std::invalid_argument);
}

TEST_CASE("even-alpha spectra are rescaled alpha = 0 spectra") {
    const auto base = radial_spectrum(solve_nodal({0.0, 3.0, 2}));
    for (double alpha : {2.0, 4.0}) {
        const double s = (alpha + 2.0) / 2.0;
        const auto sp = radial_spectrum(solve_nodal({alpha, 3.0, 2}));
        REQUIRE(sp.count() == base.count());
        for (int j = 0; j < sp.count(); ++j) CHECK(sp.lambdas[j] == doctest::Approx(s * s * base.lambdas[j]).epsilon(1e-4));
    }
}

TEST_CASE("geometric mesh and mode operator shapes") {
    const auto mesh = geometric_mesh(1e-4, 1.1);
    CHECK(mesh.front() == 0.0);
    CHECK(mesh[1] == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(mesh.back() == 1.0);
    for (std::size_t i = 2; i < mesh.size(); ++i) CHECK(mesh[i] / mesh[i - 1] <= 1.1 * (1 + 1e-12));
    CHECK_THROWS_AS(geometric_mesh(0.0, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(geometric_mesh(1e-4, 1.0), std::invalid_argument);

    RadialPotential zero{[](double) { return 0.0; }, 1e-4};
    const auto k0 = mode_operator(zero, 0, 1.1), k1 = mode_operator(zero, 1, 1.1);
    CHECK(k0.size() == k1.size() + 1);   // the origin is free only for k = 0
    CHECK_THROWS_AS(mode_operator(zero, -1, 1.1), std::invalid_argument);
}
