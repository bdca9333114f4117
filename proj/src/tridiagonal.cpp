#include "henon/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace henon {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

template <typename Diag, typename Off>
Inertia ldlt_inertia(std::size_t n, Diag&& diag, Off&& off) {
    Inertia out;
    double pivot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double q = diag(i);
        if (i > 0) {
            const double e = off(i - 1);
            q -= e * e / pivot;
        }
        if (q == 0.0) {
            ++out.zero;
            q = kTiny;
        } else if (q < 0.0) {
            ++out.negative;
        } else {
            ++out.positive;
        }
        pivot = q;
    }
    return out;
}

} // namespace

Inertia inertia(const SymTridiagonal& a) {
    if (a.off.size() + 1 != a.diag.size() && !a.diag.empty())
        throw std::invalid_argument("off-diagonal length must be n-1");
    return ldlt_inertia(a.size(), [&](std::size_t i) { return a.diag[i]; },
                        [&](std::size_t i) { return a.off[i]; });
}

int sturm_count(const SymTridiagonal& a, double shift) {
    const Inertia in = ldlt_inertia(a.size(), [&](std::size_t i) { return a.diag[i] - shift; },
                                    [&](std::size_t i) { return a.off[i]; });
    return in.negative;
}

int pencil_count(const SymTridiagonal& a, const SymTridiagonal& b, double shift) {
    if (a.size() != b.size()) throw std::invalid_argument("pencil matrices differ in size");
    const Inertia in = ldlt_inertia(
        a.size(), [&](std::size_t i) { return a.diag[i] - shift * b.diag[i]; },
        [&](std::size_t i) { return a.off[i] - shift * b.off[i]; });
    return in.negative;
}

double bisect_eigenvalue(const SymTridiagonal& a, int j, double lo, double hi, double tol) {
    if (sturm_count(a, lo) >= j || sturm_count(a, hi) < j)
        throw std::invalid_argument("bisection bracket does not isolate the requested eigenvalue");
    while (hi - lo > tol * (1.0 + std::max(std::abs(lo), std::abs(hi)))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (sturm_count(a, mid) >= j ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace henon
