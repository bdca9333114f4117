#pragma once

// Dormand–Prince 5(4) embedded Runge–Kutta pair with step-size control.
//
// Accepted steps are recorded so that the solution can be recovered anywhere
// inside a step by re-stepping from its left endpoint with a shorter step
// ("dense output by restart"). A shorter step from the same accepted state
// carries a smaller local error than the accepted step itself, so values
// obtained this way are as accurate as the integration path.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "henon/errors.hpp"

namespace henon::ode {

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_min = 1e-14;   // relative to |t| + 1
    std::size_t max_steps = 2'000'000;
    std::vector<double> component_atol;   // overrides atol per component when non-empty
};

template <std::size_t N>
class DormandPrince45 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<State(double, const State&)>;

    /// Left endpoint of an accepted step together with the FSAL derivative.
    struct Node {
        double t;
        State y;
        State dy;
        double h;   // size of the step taken from this node; 0 for the last node
    };

    struct Trial {
        State y5;
        State dy5;
        double err;  // scaled RMS error norm, accept if <= 1
    };

    explicit DormandPrince45(Rhs rhs, Tolerances tol = {}) : rhs_(std::move(rhs)), tol_(tol) {}

    const Tolerances& tolerances() const { return tol_; }

    /// Single step of size h from (t, y) whose derivative is dy.
    Trial step(double t, const State& y, const State& dy, double h) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                                a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        const State& k1 = dy;
        State tmp;
        auto combine = [&](auto&&... terms) {
            for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (0.0 + ... + (terms.first * (*terms.second)[i]));
            return tmp;
        };
        using P = std::pair<double, const State*>;

        const State k2 = rhs_(t + c2 * h, combine(P{a21, &k1}));
        const State k3 = rhs_(t + c3 * h, combine(P{a31, &k1}, P{a32, &k2}));
        const State k4 = rhs_(t + c4 * h, combine(P{a41, &k1}, P{a42, &k2}, P{a43, &k3}));
        const State k5 = rhs_(t + c5 * h, combine(P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4}));
        const State k6 = rhs_(t + h, combine(P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5}));
        const State y5 = combine(P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6});
        const State k7 = rhs_(t + h, y5);

        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol(i) + tol_.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            sum += (e / sc) * (e / sc);
        }
        return {y5, k7, std::sqrt(sum / static_cast<double>(N))};
    }

    /// Value at t inside the step starting at `node` (node.t <= t <= node.t + node.h).
    State restep(const Node& node, double t) const {
        const double h = t - node.t;
        if (h == 0.0) return node.y;
        return step(node.t, node.y, node.dy, h).y5;
    }

    /// Integrates from (t0, y0) towards t1 > t0. After every accepted step the
    /// observer is called with the two bracketing nodes; returning false stops
    /// the integration. Returns the accepted nodes (the last one has h = 0).
    template <typename Observer>
    std::vector<Node> integrate(double t0, const State& y0, double t1, Observer&& observer) const {
        std::vector<Node> nodes;
        State dy = rhs_(t0, y0);
        double t = t0;
        State y = y0;
        double h = initial_step(t0, y0, dy, t1 - t0);
        double err_old = 1e-4;

        for (std::size_t n = 0; n < tol_.max_steps; ++n) {
            if (t >= t1) break;
            const double h_floor = tol_.h_min * (std::abs(t) + 1.0);
            if (h < h_floor) throw NonConvergence("step size underflow at t = " + std::to_string(t));
            const bool last = t + h >= t1;
            if (last) h = t1 - t;

            const Trial trial = step(t, y, dy, h);
            if (!std::isfinite(trial.err)) {
                h *= 0.2;
                continue;
            }
            if (trial.err <= 1.0) {
                nodes.push_back({t, y, dy, h});
                const double t_new = last ? t1 : t + h;
                const Node right{t_new, trial.y5, trial.dy5, 0.0};
                // PI controller (Hairer & Wanner, beta = 0.04)
                const double err = std::max(trial.err, 1e-10);
                double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_old, 0.04);
                fac = std::clamp(fac, 0.2, 10.0);
                err_old = err;
                t = t_new;
                y = trial.y5;
                dy = trial.dy5;
                if (!observer(nodes.back(), right)) {
                    nodes.push_back(right);
                    return nodes;
                }
                h *= fac;
            } else {
                h *= std::max(0.2, 0.9 * std::pow(trial.err, -0.2));
            }
        }
        if (t < t1) throw NonConvergence("maximum number of integration steps exceeded");
        nodes.push_back({t, y, dy, 0.0});
        return nodes;
    }

private:
    double atol(std::size_t i) const {
        return tol_.component_atol.empty() ? tol_.atol : tol_.component_atol[i];
    }

    double initial_step(double t0, const State& y0, const State& dy0, double span) const {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol(i) + tol_.rtol * std::abs(y0[i]);
            d0 += (y0[i] / sc) * (y0[i] / sc);
            d1 += (dy0[i] / sc) * (dy0[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        State y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h0 * dy0[i];
        const State dy1 = rhs_(t0 + h0, y1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = atol(i) + tol_.rtol * std::abs(y0[i]);
            d2 += ((dy1[i] - dy0[i]) / sc) * ((dy1[i] - dy0[i]) / sc);
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                     : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
        return std::min({100.0 * h0, h1, span});
    }

    Rhs rhs_;
    Tolerances tol_;
};

} // namespace henon::ode
