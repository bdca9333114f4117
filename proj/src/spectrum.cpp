#include "henon/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "henon/errors.hpp"
#include "henon/quadrature.hpp"

namespace henon {

std::vector<double> SchrodingerProblem::grid_t() const {
    std::vector<double> g(M + 1);
    for (std::size_t i = 0; i <= M; ++i) g[i] = t(i);
    g.back() = 0.0;
    return g;
}

SymTridiagonal SchrodingerProblem::matrix() const {
    if (M < 2 || V.size() != M + 1) throw std::logic_error("malformed Schrödinger problem");
    const double h = step();
    const double inv_h2 = 1.0 / (h * h);
    SymTridiagonal a;
    a.diag.resize(M - 1);
    a.off.assign(M - 2, -inv_h2);
    for (std::size_t i = 1; i < M; ++i) a.diag[i - 1] = 2.0 * inv_h2 + V[i];
    return a;
}

SchrodingerProblem SchrodingerProblem::constant_well(double T, std::size_t M, double depth) {
    return {T, M, std::vector<double>(M + 1, depth)};
}

namespace {

double potential_t(const RadialProfile& prof, double t) {
    const auto& P = prof.params;
    const double r = std::exp(t);
    if (r >= 1.0) return 0.0;
    const double u = prof.evaluate(r).first;
    return -P.coefficient * P.p * std::exp((P.alpha + 2.0) * t) * std::pow(std::abs(u), P.p - 1.0);
}

} // namespace

double truncation_length(const RadialProfile& prof, const SpectrumOptions& opt) {
    const auto& P = prof.params;
    // V(t) ~ -c p d^{p-1} e^{(α+2)t} as t -> -∞
    const double lead = P.coefficient * P.p * std::pow(prof.d, P.p - 1.0);
    double T = std::max(1.0, std::log(lead / opt.truncation_tol) / (P.alpha + 2.0));
    for (;;) {
        if (T > opt.max_truncation)
            throw NonConvergence("truncation tolerance unattainable within T <= " +
                                 std::to_string(opt.max_truncation));
        if (std::abs(potential_t(prof, -T)) <= opt.truncation_tol) return T;
        T += 1.0;
    }
}

SchrodingerProblem build_schrodinger(const RadialProfile& prof, double T, std::size_t M) {
    if (!(T > 0.0) || M < 2) throw std::invalid_argument("need T > 0 and M >= 2");
    SchrodingerProblem pb{T, M, std::vector<double>(M + 1)};
    for (std::size_t i = 0; i < M; ++i) pb.V[i] = potential_t(prof, pb.t(i));
    pb.V[M] = potential_t(prof, 0.0);
    return pb;
}

SchrodingerProblem build_schrodinger(const RadialProfile& prof, const SpectrumOptions& opt) {
    return build_schrodinger(prof, truncation_length(prof, opt), opt.intervals);
}

RadialSpectrum negative_spectrum(const SchrodingerProblem& pb, double eig_tol) {
    const SymTridiagonal a = pb.matrix();
    RadialSpectrum out;
    out.T = pb.T;
    out.M = pb.M;
    out.eig_tol = eig_tol;
    out.truncation_change = std::numeric_limits<double>::quiet_NaN();
    out.refinement_change = std::numeric_limits<double>::quiet_NaN();

    const int count = sturm_count(a, 0.0);
    if (count == 0) return out;
    const double lo = *std::min_element(pb.V.begin(), pb.V.end()) - 1.0;
    for (int j = 1; j <= count; ++j) out.lambdas.push_back(bisect_eigenvalue(a, j, lo, 0.0, eig_tol));
    for (std::size_t j = 1; j < out.lambdas.size(); ++j)
        if (!(out.lambdas[j] > out.lambdas[j - 1]))
            throw NonConvergence("radial eigenvalues are not strictly increasing");
    return out;
}

RadialSpectrum radial_spectrum(const RadialProfile& prof, const SpectrumOptions& opt) {
    // Bisect one decade below the reporting tolerance so that comparisons
    // between neighbouring discretizations are not dominated by bracket width.
    const double inner_tol = 0.1 * opt.eig_tol;
    const double T0 = truncation_length(prof, opt);
    const double h = T0 / static_cast<double>(opt.intervals);
    // Extensions add whole cells so every mesh shares the nodes next to t = 0.
    const auto extra = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opt.stability_extension / h)));
    auto solve = [&](std::size_t M) {
        RadialSpectrum sp = negative_spectrum(build_schrodinger(prof, h * static_cast<double>(M), M), inner_tol);
        sp.eig_tol = opt.eig_tol;
        return sp;
    };

    std::size_t M = opt.intervals;
    RadialSpectrum base = solve(M);
    if (!opt.check_stability) return base;

    for (int ext = 0;; ++ext) {
        const RadialSpectrum longer = solve(M + extra);
        bool settled = longer.count() == base.count();
        double change = 0.0;
        for (int j = 0; settled && j < base.count(); ++j) {
            const double dj = std::abs(longer.lambdas[j] - base.lambdas[j]);
            change = std::max(change, dj);
            settled = dj <= opt.eig_tol * (1.0 + std::abs(base.lambdas[j]));
        }
        if (settled) {
            base.truncation_change = change;
            break;
        }
        if (ext + 1 >= opt.max_extensions)
            throw NonConvergence("negative radial spectrum not stable under truncation up to T = " +
                                 std::to_string(longer.T) + " (counts " + std::to_string(base.count()) +
                                 " vs " + std::to_string(longer.count()) + ")");
        M += extra;
        base = longer;
    }
    const double T = base.T;

    RadialSpectrum finer = negative_spectrum(build_schrodinger(prof, T, 2 * base.M), inner_tol);
    if (finer.count() != base.count())
        throw NonConvergence("negative radial count not stable under mesh refinement: " +
                             std::to_string(base.count()) + " vs " + std::to_string(finer.count()));
    base.refinement_change = 0.0;
    for (int j = 0; j < base.count(); ++j) {
        base.refinement_deltas.push_back(finer.lambdas[j] - base.lambdas[j]);
        base.refinement_change = std::max(base.refinement_change, std::abs(base.refinement_deltas.back()));
    }
    return base;
}

RadialSpectrum richardson_spectrum(const RadialProfile& prof, const RadialSpectrum& base, double eig_tol) {
    std::array<RadialSpectrum, 3> lv;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        lv[i] = negative_spectrum(build_schrodinger(prof, base.T, base.M << i), eig_tol);
        if (lv[i].count() != base.count())
            throw NonConvergence("negative radial count changed under refinement to M = " +
                                 std::to_string(base.M << i));
    }
    RadialSpectrum out = base;
    out.M = base.M << 2;
    out.eig_tol = eig_tol;
    out.error_estimates.clear();
    for (int j = 0; j < base.count(); ++j) {
        const double r1 = lv[1].lambdas[j] + (lv[1].lambdas[j] - lv[0].lambdas[j]) / 3.0;
        const double r2 = lv[2].lambdas[j] + (lv[2].lambdas[j] - lv[1].lambdas[j]) / 3.0;
        out.lambdas[j] = r2;
        out.error_estimates.push_back(std::abs(r2 - r1));
    }
    for (std::size_t j = 1; j < out.lambdas.size(); ++j)
        if (!(out.lambdas[j] > out.lambdas[j - 1]))
            throw NonConvergence("extrapolated radial eigenvalues are not strictly increasing");
    if (!out.lambdas.empty() && !(out.lambdas.back() < 0.0))
        throw NonConvergence("extrapolated radial eigenvalue is not negative");
    return out;
}

RadialPotential linearized_potential(const RadialProfile& prof, const SpectrumOptions& opt) {
    const double floor = std::min(opt.r_floor, std::exp(-truncation_length(prof, opt)));
    return {[&prof](double r) {
                const auto& P = prof.params;
                const double u = prof.evaluate(std::min(r, 1.0)).first;
                return P.weight(r) * P.p * std::pow(std::abs(u), P.p - 1.0);
            },
            floor};
}

std::vector<double> geometric_mesh(double r_floor, double ratio) {
    if (!(r_floor > 0.0 && r_floor < 1.0) || !(ratio > 1.0))
        throw std::invalid_argument("geometric mesh needs 0 < r_floor < 1 and ratio > 1");
    const double span = -std::log(r_floor);
    const auto cells = static_cast<std::size_t>(std::ceil(span / std::log(ratio)));
    std::vector<double> mesh{0.0};
    for (std::size_t i = 0; i <= cells; ++i)
        mesh.push_back(std::exp(-span * static_cast<double>(cells - i) / static_cast<double>(cells)));
    mesh.back() = 1.0;
    return mesh;
}

SymTridiagonal mode_operator(const RadialPotential& pot, int k, double ratio) {
    if (k < 0) throw std::invalid_argument("angular mode must be >= 0");
    const std::vector<double> mesh = geometric_mesh(pot.r_floor, ratio);
    const std::size_t nodes = mesh.size();   // last node (r = 1) is Dirichlet
    const double k2 = static_cast<double>(k) * k;

    // Full (nodes-1) x (nodes-1) system over nodes 0..nodes-2.
    std::vector<double> diag(nodes - 1, 0.0), off(nodes - 2, 0.0);
    for (std::size_t e = 0; e + 1 < nodes; ++e) {
        const double a = mesh[e], b = mesh[e + 1], h = b - a;
        const double stiff = 0.5 * (a + b) / h;
        auto element = [&](auto&& w) {
            // ∫ w(r) N_i N_j dr with N_0 = (b - r)/h, N_1 = (r - a)/h
            std::array<double, 3> m{};
            m[0] = quad::gauss_legendre([&](double r) { const double n0 = (b - r) / h; return w(r) * n0 * n0; }, a, b);
            m[1] = quad::gauss_legendre([&](double r) { return w(r) * (b - r) * (r - a) / (h * h); }, a, b);
            m[2] = quad::gauss_legendre([&](double r) { const double n1 = (r - a) / h; return w(r) * n1 * n1; }, a, b);
            return m;
        };
        const auto mq = element([&](double r) { return r * pot.q(r); });
        std::array<double, 3> ma{};
        if (k2 > 0.0) ma = element([](double r) { return 1.0 / r; });

        const double e00 = stiff + k2 * ma[0] - mq[0];
        const double e01 = -stiff + k2 * ma[1] - mq[1];
        const double e11 = stiff + k2 * ma[2] - mq[2];
        diag[e] += e00;
        if (e + 1 < nodes - 1) {
            diag[e + 1] += e11;
            off[e] += e01;
        }
    }
    SymTridiagonal a;
    if (k == 0) {
        a.diag = std::move(diag);
        a.off = std::move(off);
    } else {
        a.diag.assign(diag.begin() + 1, diag.end());
        a.off.assign(off.begin() + 1, off.end());
    }
    return a;
}

namespace {

int stable_inertia(const RadialPotential& pot, int k, const SpectrumOptions& opt) {
    const int coarse = inertia(mode_operator(pot, k, opt.geometric_ratio)).negative;
    const int fine = inertia(mode_operator(pot, k, std::sqrt(opt.geometric_ratio))).negative;
    if (coarse != fine)
        throw NonConvergence("mode-" + std::to_string(k) + " inertia not stable under mesh refinement: " +
                             std::to_string(coarse) + " vs " + std::to_string(fine));
    return coarse;
}

} // namespace

int radial_morse_index(const RadialPotential& pot, const SpectrumOptions& opt) {
    return stable_inertia(pot, 0, opt);
}

int radial_morse_index(const RadialProfile& prof, const SpectrumOptions& opt) {
    return radial_morse_index(linearized_potential(prof, opt), opt);
}

int mode_negative_count(const RadialPotential& pot, int k, const SpectrumOptions& opt) {
    if (k < 1) throw std::invalid_argument("angular mode must be >= 1");
    return stable_inertia(pot, k, opt);
}

int mode_negative_count(const RadialProfile& prof, int k, const SpectrumOptions& opt) {
    return mode_negative_count(linearized_potential(prof, opt), k, opt);
}

} // namespace henon
