#pragma once

#include <string>
#include <utility>
#include <vector>

#include "henon/radial_solver.hpp"
#include "henon/spectrum.hpp"

namespace henon {

struct MorseOptions {
    SpectrumOptions spectrum;
    // λ_j + k² counts as a tie when it lies within
    //   max(tie_factor · eig_tol · (1 + |λ_j|), 2 · (error estimate of λ_j)),
    // the error estimate being |λ_j(2M) - λ_j(M)| or, after a tie, the
    // Richardson error. On a tie the t-route is extrapolated from M, 2M, 4M with
    // eig_tol scaled by tie_tol_factor and the r-route mesh ratio is square-rooted.
    double tie_factor = 10.0;
    double tie_tol_factor = 0.01;
    int max_mode = 100000;              // hard stop for the mode sum
};

struct BoundCheck {
    std::string name;
    int required = 0;
    int actual = 0;
    bool pass = false;
};

/// λ_j + k² closer to zero than the discretization can resolve.
struct Tie {
    int j = 0;   // 1-based
    int k = 0;
    double gap = 0.0;   // λ_j + k²
    double band = 0.0;
};

struct MorseReport {
    HenonParams params;
    int m_rad = 0;
    RadialSpectrum spectrum;
    std::vector<std::vector<int>> angular_counts;   // N_j = {k >= 1 : λ_j + k² < 0}
    std::vector<int> mode_counts;                   // mode-sum route, entry k-1 for mode k
    int m_total = 0;
    int route_b_total = 0;
    std::vector<BoundCheck> bounds;
    std::vector<Tie> ties;
    bool ambiguous = false;   // a tie survived refinement; counts are not certified

    int nonradial() const { return m_total - m_rad; }
    bool bounds_pass() const;
};

/// {k >= 1 : λ + k² < 0}
std::vector<int> angular_set(double lambda);

/// m = m_rad + 2 Σ_j #N_j from the t-route spectrum, cross-checked against the
/// r-route sum m_rad + 2 Σ_k (negative count of mode k). Throws
/// VerificationFailure when the routes disagree and no tie is pending.
MorseReport assemble_morse(const RadialProfile& profile, const MorseOptions& options = {});

/// The α = 0 companion with the same (p, n), normalized as -Δu₀ = (2/(α+2))² f(u₀).
/// Both normalizations are computed and their counts compared (VerificationFailure
/// on mismatch); the coefficient-1 report is returned.
MorseReport autonomous_report(double p, int n, double alpha, const MorseOptions& options = {});

/// Lower bounds for a power nonlinearity (superlinear for every p > 1). The
/// autonomous report supplies m(u₀) - m_rad(u₀).
std::vector<BoundCheck> check_lower_bounds(const MorseReport& report, const MorseReport& autonomous);

struct SweepRow {
    double alpha = 0.0;
    MorseReport report;
};

struct SweepResult {
    double p = 0.0;
    int n = 0;
    std::vector<SweepRow> rows;
    std::vector<std::pair<double, double>> jumps;   // consecutive α where m_total increases
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

/// Solves, assembles and bound-checks every α (rows computed concurrently,
/// merged by ascending α), then checks m_rad = n and that m_total is
/// non-decreasing. Violations are collected, not thrown.
SweepResult monotonicity_sweep(double p, int n, const std::vector<double>& alphas,
                               const MorseOptions& options = {}, unsigned threads = 0);

struct RemarkRow {
    double p = 0.0;
    int m_total = 0;
    int m_rad = 0;
    int value = 0;           // m(u₀) - m_rad(u₀), decomposition route
    int route_b_value = 0;   // the same from the mode sum
    bool even = false;
    bool at_least_two = false;
    int expected_large_p = 10;
    bool ambiguous = false;
    std::vector<double> lambdas;
};

/// Observational: m(u₀) - m_rad(u₀) for n = 2, α = 0 at each p.
std::vector<RemarkRow> remark_probe(const std::vector<double>& p_list, const MorseOptions& options = {},
                                    unsigned threads = 0);

} // namespace henon
