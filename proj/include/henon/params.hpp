#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace henon {

/// Identifies a radial nodal solution of
///   -Δu = coefficient · |x|^alpha · |u|^{p-1} u   in the unit disk,  u = 0 on the boundary,
/// with exactly n_nodal nodal sets. The coefficient is 1 for the Hénon problem
/// itself and (2/(alpha+2))^2 for the autonomous companion.
struct HenonParams {
    double alpha = 0.0;
    double p = 3.0;
    int n_nodal = 1;
    double coefficient = 1.0;

    void validate() const {
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("alpha must be finite and >= 0, got " + std::to_string(alpha));
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("p must be finite and > 1, got " + std::to_string(p));
        if (n_nodal < 1)
            throw std::invalid_argument("number of nodal sets must be >= 1, got " + std::to_string(n_nodal));
        if (!(coefficient > 0.0) || !std::isfinite(coefficient))
            throw std::invalid_argument("coefficient must be finite and > 0");
    }

    /// Weight c·r^alpha multiplying the nonlinearity.
    double weight(double r) const { return coefficient * (alpha == 0.0 ? 1.0 : std::pow(r, alpha)); }

    /// f(u) = |u|^{p-1} u
    double nonlinearity(double u) const { return std::copysign(std::pow(std::abs(u), p), u); }

    /// f'(u) = p |u|^{p-1}
    double nonlinearity_derivative(double u) const { return p * std::pow(std::abs(u), p - 1.0); }

    friend bool operator==(const HenonParams&, const HenonParams&) = default;
};

} // namespace henon
