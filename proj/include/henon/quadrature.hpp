#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "henon/errors.hpp"

namespace henon::quad {

/// Five-point Gauss–Legendre rule on [a, b].
template <typename F>
double gauss_legendre(F&& f, double a, double b) {
    static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831,
                                             -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665,
                                             0.4786286704993665, 0.2369268850561891,
                                             0.2369268850561891};
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + half * x[i]);
    return half * sum;
}

struct SimpsonOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_depth = 48;
    int initial_panels = 64;   // per breakpoint interval
};

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth, bool& exhausted) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        exhausted = true;
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol || m <= a || m >= b) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, exhausted) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, exhausted);
}

} // namespace detail

/// Adaptive composite Simpson over [breaks.front(), breaks.back()], with every
/// entry of `breaks` forced as a panel boundary. Each interval starts from
/// `initial_panels` panels; the error budget is shared in proportion to length.
/// Throws NonConvergence when the recursion depth is exhausted.
template <typename F>
double adaptive_simpson(F&& f, std::span<const double> breaks, const SimpsonOptions& opt = {}) {
    if (breaks.size() < 2) return 0.0;
    const double total = breaks.back() - breaks.front();
    if (total <= 0.0) return 0.0;

    // Coarse pass to fix an absolute target from the integral's magnitude.
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (b > a) coarse += gauss_legendre(f, a, b);
    }
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(coarse));

    double sum = 0.0;
    bool exhausted = false;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (!(b > a)) continue;
        const int panels = std::max(1, opt.initial_panels);
        const double h = (b - a) / panels;
        double x0 = a, f0 = f(a);
        for (int k = 0; k < panels; ++k) {
            const double x1 = (k + 1 == panels) ? b : a + (k + 1) * h;
            const double xm = 0.5 * (x0 + x1);
            const double fm = f(xm), f1 = f(x1);
            const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            sum += detail::simpson_recurse(f, x0, x1, f0, fm, f1, whole, target * (x1 - x0) / total,
                                           opt.max_depth, exhausted);
            x0 = x1;
            f0 = f1;
        }
    }
    if (exhausted) throw NonConvergence("adaptive Simpson quadrature did not converge");
    return sum;
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, const SimpsonOptions& opt = {}) {
    const std::array<double, 2> br{a, b};
    return adaptive_simpson(std::forward<F>(f), std::span<const double>(br), opt);
}

} // namespace henon::quad
