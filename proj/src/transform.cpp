#include "henon/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "henon/quadrature.hpp"

namespace henon {

KappaMap::KappaMap(double k) : kappa(k) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be finite and > 0");
}

double KappaMap::operator()(double r) const { return radial_map(kappa, r); }

KappaMap KappaMap::between(double alpha, double beta) { return KappaMap((beta + 2.0) / (alpha + 2.0)); }

double radial_map(double kappa, double r) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
    if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
    if (r == 0.0 || kappa == 1.0) return r;
    return std::pow(r, kappa);
}

RadialProfile transform_solution(const RadialProfile& prof, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
    const auto& P = prof.params;
    const KappaMap to_alpha = KappaMap::between(P.alpha, beta);   // s ↦ s^κ
    const double kappa = to_alpha.kappa;
    const double amp = std::pow(kappa, 2.0 / (P.p - 1.0));
    const KappaMap to_beta = to_alpha.inverse();

    // The image of the source grid is used as is: every value is an exact rescaling of a
    // stored sample, and nodal radii stay grid points. Mixing in extra uniform points would
    // create cells far narrower than the interpolation error they inherit.
    const std::vector<double>& src = prof.grid;
    RadialProfile out;
    out.params = P;
    out.params.alpha = beta;
    out.d = amp * prof.d;
    out.tolerances = prof.tolerances;
    for (double z : prof.nodal_radii) out.nodal_radii.push_back(z == 1.0 ? 1.0 : to_beta(z));
    out.grid.reserve(src.size());
    out.u.reserve(src.size());
    out.du.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double s = i + 1 == src.size() ? 1.0 : to_beta(src[i]);
        const double chain = s == 0.0 ? 0.0 : kappa * std::pow(s, kappa - 1.0);
        if (!out.grid.empty() && !(s > out.grid.back()))
            throw std::logic_error("transformed grid is not strictly increasing");
        out.grid.push_back(s);
        out.u.push_back(amp * prof.u[i]);
        out.du.push_back(amp * chain * prof.du[i]);
    }
    out.u[0] = out.d;
    out.du[0] = 0.0;

    check_profile(out);
    return out;
}

namespace {

TestFunction make(std::string name, std::function<double(double)> g, std::function<double(double)> dg, int k) {
    return {std::move(name), std::move(g), std::move(dg), k, 1.0};
}

constexpr double pi = std::numbers::pi;

double angular_constant(int k) { return k == 0 ? 2.0 * pi : pi; }

// [0, support] split at every interior break.
std::vector<double> breakpoints(double support, const std::vector<double>& extra) {
    std::vector<double> br{0.0, support};
    for (double b : extra)
        if (b > 0.0 && b < support) br.push_back(b);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

// k² g²/r² · r, with the limit 0 at the origin (g(0) = 0 for k >= 1).
double angular_term(const TestFunction& w, double r) {
    if (w.k == 0 || r == 0.0) return 0.0;
    const double g = w.g(r);
    return static_cast<double>(w.k * w.k) * g * g / r;
}

} // namespace

std::vector<TestFunction> standard_battery() {
    const std::vector<TestFunction> base{
        make("sin(pi r)", [](double r) { return std::sin(pi * r); }, [](double r) { return pi * std::cos(pi * r); }, 0),
        make("r(1-r)", [](double r) { return r * (1.0 - r); }, [](double r) { return 1.0 - 2.0 * r; }, 0),
        make("sin(2 pi r)", [](double r) { return std::sin(2.0 * pi * r); },
             [](double r) { return 2.0 * pi * std::cos(2.0 * pi * r); }, 0),
        make("r^2(1-r)", [](double r) { return r * r * (1.0 - r); }, [](double r) { return 2.0 * r - 3.0 * r * r; }, 0),
    };
    std::vector<TestFunction> battery;
    for (int k = 0; k <= 3; ++k) {
        for (const auto& b : base) {
            if (k == 0) {
                battery.push_back(b);
                continue;
            }
            battery.push_back(make("r*" + b.name, [g = b.g](double r) { return r * g(r); },
                                   [g = b.g, dg = b.dg](double r) { return g(r) + r * dg(r); }, k));
        }
    }
    return battery;
}

TestFunction nodal_restriction(const RadialProfile& prof) {
    const double z = prof.nodal_radii.front();
    TestFunction w = make(
        "u on first nodal set", [&prof](double r) { return prof.evaluate(r).first; },
        [&prof](double r) { return prof.evaluate(r).second; }, 0);
    w.support = z;
    return w;
}

TestFunction compose(const TestFunction& w, double kappa) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("compose requires kappa >= 1");
    const KappaMap T(kappa);
    TestFunction out = make(w.name, [g = w.g, T](double r) { return g(T(r)); },
                            [dg = w.dg, T](double r) {
                                if (r == 0.0) return T.kappa == 1.0 ? dg(0.0) : 0.0;
                                return T.kappa * std::pow(r, T.kappa - 1.0) * dg(T(r));
                            },
                            w.k);
    out.support = w.support == 1.0 ? 1.0 : T.inverse()(w.support);
    return out;
}

double dirichlet_energy(const TestFunction& w) {
    const auto br = breakpoints(w.support, {});
    const double integral = quad::adaptive_simpson(
        [&](double r) {
            const double dg = w.dg(r);
            return dg * dg * r + angular_term(w, r);
        },
        std::span<const double>(br));
    return angular_constant(w.k) * integral;
}

double quadratic_form(const RadialProfile& prof, const TestFunction& w) {
    const auto& P = prof.params;
    const auto br = breakpoints(w.support, prof.nodal_radii);
    const double integral = quad::adaptive_simpson(
        [&](double r) {
            const double g = w.g(r), dg = w.dg(r);
            const double q = P.weight(r) * P.nonlinearity_derivative(prof.evaluate(r).first);
            return (dg * dg - q * g * g) * r + angular_term(w, r);
        },
        std::span<const double>(br));
    return angular_constant(w.k) * integral;
}

bool ComparisonReport::passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const ComparisonEntry& e) { return e.pass; });
}

ComparisonReport verify_form_comparison(const RadialProfile& pa, double beta,
                                        const std::vector<TestFunction>& battery) {
    const double alpha = pa.params.alpha;
    if (!(beta >= alpha)) throw std::invalid_argument("form comparison requires beta >= alpha");
    const double kappa = KappaMap::between(alpha, beta).kappa;
    const RadialProfile pb = transform_solution(pa, beta);

    ComparisonReport rep{alpha, beta, {}};
    for (const auto& w : battery) {
        ComparisonEntry e;
        e.g_name = w.name;
        e.k = w.k;
        e.kappa = kappa;
        e.Q_alpha = quadratic_form(pa, w);
        e.Q_beta_of_wk = quadratic_form(pb, compose(w, kappa));
        e.slack = kappa * e.Q_alpha - e.Q_beta_of_wk;
        const double tol = 1e-7 * (1.0 + std::abs(e.Q_alpha));
        e.pass = w.k == 0 ? std::abs(e.slack) <= tol : e.slack >= -tol;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

} // namespace henon
