#include "henon/morse.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "henon/errors.hpp"
#include "henon/parallel.hpp"

namespace henon {

bool MorseReport::bounds_pass() const {
    return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.pass; });
}

namespace {

std::vector<Tie> find_ties(const RadialSpectrum& sp, double tie_factor) {
    std::vector<Tie> ties;
    for (int j = 0; j < sp.count(); ++j) {
        const double lam = sp.lambdas[j];
        const int k = static_cast<int>(std::llround(std::sqrt(-lam)));
        if (k < 1) continue;
        double band = tie_factor * sp.eig_tol * (1.0 + std::abs(lam));
        const auto& err = sp.error_estimates.empty() ? sp.refinement_deltas : sp.error_estimates;
        if (j < static_cast<int>(err.size())) band = std::max(band, 2.0 * std::abs(err[j]));
        const double gap = lam + static_cast<double>(k) * k;
        if (std::abs(gap) <= band) ties.push_back({j + 1, k, gap, band});
    }
    return ties;
}

std::vector<std::vector<int>> angular_sets(const RadialSpectrum& sp) {
    std::vector<std::vector<int>> sets;
    for (double lam : sp.lambdas) sets.push_back(angular_set(lam));
    return sets;
}

std::vector<int> mode_sum(const RadialPotential& pot, const SpectrumOptions& opt, int max_mode) {
    std::vector<int> counts;
    for (int k = 1; k <= max_mode; ++k) {
        const int c = mode_negative_count(pot, k, opt);
        counts.push_back(c);
        if (c == 0) return counts;
    }
    throw NonConvergence("mode-sum route did not reach a mode with no negative directions by k = " +
                         std::to_string(max_mode));
}

std::string describe(const MorseReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha=" << r.params.alpha << " p=" << r.params.p << " n=" << r.params.n_nodal
       << " m_rad(r-route)=" << r.m_rad << " J(t-route)=" << r.spectrum.count() << " lambdas=[";
    for (std::size_t j = 0; j < r.spectrum.lambdas.size(); ++j) os << (j ? "," : "") << r.spectrum.lambdas[j];
    os << "] m_total=" << r.m_total << " route_b_total=" << r.route_b_total << " mode_counts=[";
    for (std::size_t k = 0; k < r.mode_counts.size(); ++k) os << (k ? "," : "") << r.mode_counts[k];
    os << "]";
    return os.str();
}

std::optional<std::string> companion_mismatch(const MorseReport& base, const MorseReport& scaled) {
    if (base.m_rad == scaled.m_rad && base.m_total == scaled.m_total) return std::nullopt;
    return "autonomous normalizations disagree: coefficient 1 gives (m_rad, m) = (" +
           std::to_string(base.m_rad) + ", " + std::to_string(base.m_total) + "), coefficient " +
           std::to_string(scaled.params.coefficient) + " gives (" + std::to_string(scaled.m_rad) + ", " +
           std::to_string(scaled.m_total) + ")";
}

} // namespace

std::vector<int> angular_set(double lambda) {
    std::vector<int> ks;
    for (int k = 1; lambda + static_cast<double>(k) * k < 0.0; ++k) ks.push_back(k);
    return ks;
}

MorseReport assemble_morse(const RadialProfile& prof, const MorseOptions& opt) {
    MorseReport rep;
    rep.params = prof.params;
    const RadialPotential pot = linearized_potential(prof, opt.spectrum);

    SpectrumOptions sopt = opt.spectrum;
    rep.spectrum = radial_spectrum(prof, sopt);
    rep.ties = find_ties(rep.spectrum, opt.tie_factor);
    if (!rep.ties.empty()) {
        // Tighten both routes before declaring counts.
        sopt.eig_tol *= opt.tie_tol_factor;
        sopt.geometric_ratio = std::sqrt(sopt.geometric_ratio);
        rep.spectrum = richardson_spectrum(prof, rep.spectrum, sopt.eig_tol);
        rep.ties = find_ties(rep.spectrum, opt.tie_factor);
        rep.ambiguous = !rep.ties.empty();
    }

    rep.m_rad = radial_morse_index(pot, sopt);
    rep.angular_counts = angular_sets(rep.spectrum);
    int pairs = 0;
    for (const auto& s : rep.angular_counts) pairs += static_cast<int>(s.size());
    rep.m_total = rep.m_rad + 2 * pairs;

    rep.mode_counts = mode_sum(pot, sopt, opt.max_mode);
    int route_b = 0;
    for (int c : rep.mode_counts) route_b += c;
    rep.route_b_total = rep.m_rad + 2 * route_b;

    const bool agree = rep.m_rad == rep.spectrum.count() && rep.m_total == rep.route_b_total;
    if (!agree && !rep.ambiguous) throw VerificationFailure("two-route disagreement: " + describe(rep));
    return rep;
}

std::vector<BoundCheck> check_lower_bounds(const MorseReport& r, const MorseReport& a) {
    const int n = r.params.n_nodal;
    const double alpha = r.params.alpha;
    const int half = static_cast<int>(std::floor(alpha / 2.0));
    const int m = r.m_total;
    std::vector<BoundCheck> out;
    auto add = [&](std::string name, int required, int actual) {
        out.push_back({std::move(name), required, actual, actual >= required});
    };

    add("radial_index_at_least_n", n, r.m_rad);
    add("autonomous_radial_index_at_least_n", n, a.m_rad);
    add("autonomous_index_at_least_n_plus_2(n-1)", n + 2 * (n - 1), a.m_total);
    add("index_at_least_n_plus_autonomous_excess_times_(floor(alpha/2)+1)", n + a.nonradial() * (half + 1), m);
    add("index_at_least_n_plus_(n-1)(2floor(alpha/2)+2)", n + (n - 1) * (2 * half + 2), m);
    if (n >= 2) {
        add("sign_changing_index_at_least_3", 3, m);
        add("sign_changing_index_at_least_n_plus_2", n + 2, m);
        if (alpha == std::floor(alpha) && half * 2 == static_cast<int>(alpha)) {
            add("even_alpha_index_at_least_n_plus_alpha_plus_2", n + static_cast<int>(alpha) + 2, m);
            add("even_alpha_index_at_least_alpha_plus_3", static_cast<int>(alpha) + 3, m);
        }
    }
    return out;
}

MorseReport autonomous_report(double p, int n, double alpha, const MorseOptions& opt) {
    MorseReport base = assemble_morse(solve_nodal({0.0, p, n, 1.0}), opt);
    const double c = std::pow(2.0 / (alpha + 2.0), 2.0);
    if (c != 1.0) {
        const MorseReport scaled = assemble_morse(solve_nodal({0.0, p, n, c}), opt);
        if (auto msg = companion_mismatch(base, scaled)) throw VerificationFailure(*msg);
    }
    return base;
}

SweepResult monotonicity_sweep(double p, int n, const std::vector<double>& alphas, const MorseOptions& opt,
                               unsigned threads) {
    if (alphas.empty()) throw std::invalid_argument("empty alpha grid");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] >= 0.0)) throw std::invalid_argument("alpha values must be >= 0");
        if (i > 0 && !(alphas[i] > alphas[i - 1])) throw std::invalid_argument("alpha grid must be strictly increasing");
    }

    const MorseReport base = assemble_morse(solve_nodal({0.0, p, n, 1.0}), opt);
    SweepResult res{p, n, std::vector<SweepRow>(alphas.size()), {}, {}};
    std::vector<std::optional<std::string>> companion(alphas.size());
    parallel_for(alphas.size(), threads, [&](std::size_t i) {
        const double alpha = alphas[i];
        MorseReport rep = assemble_morse(solve_nodal({alpha, p, n, 1.0}), opt);
        rep.bounds = check_lower_bounds(rep, base);
        const double c = std::pow(2.0 / (alpha + 2.0), 2.0);
        if (c != 1.0) companion[i] = companion_mismatch(base, assemble_morse(solve_nodal({0.0, p, n, c}), opt));
        res.rows[i] = {alpha, std::move(rep)};
    });

    auto at = [](double a) {
        std::ostringstream os;
        os.precision(17);
        os << "alpha=" << a;
        return os.str();
    };
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& row = res.rows[i];
        if (row.report.m_rad != n)
            res.violations.push_back(at(row.alpha) + ": m_rad = " + std::to_string(row.report.m_rad) +
                                     " != n = " + std::to_string(n));
        for (const auto& b : row.report.bounds)
            if (!b.pass)
                res.violations.push_back(at(row.alpha) + ": bound " + b.name + " requires " +
                                         std::to_string(b.required) + ", got " + std::to_string(b.actual));
        if (companion[i]) res.violations.push_back(at(row.alpha) + ": " + *companion[i]);
        if (i == 0) continue;
        const auto& prev = res.rows[i - 1];
        if (row.report.m_total > prev.report.m_total) res.jumps.emplace_back(prev.alpha, row.alpha);
        if (row.report.m_total < prev.report.m_total)
            res.violations.push_back("monotonicity: m(" + at(prev.alpha) + ") = " +
                                     std::to_string(prev.report.m_total) + " > m(" + at(row.alpha) +
                                     ") = " + std::to_string(row.report.m_total));
    }
    return res;
}

std::vector<RemarkRow> remark_probe(const std::vector<double>& p_list, const MorseOptions& opt, unsigned threads) {
    std::vector<RemarkRow> rows(p_list.size());
    parallel_for(p_list.size(), threads, [&](std::size_t i) {
        const MorseReport rep = assemble_morse(solve_nodal({0.0, p_list[i], 2, 1.0}), opt);
        RemarkRow& row = rows[i];
        row.p = p_list[i];
        row.m_total = rep.m_total;
        row.m_rad = rep.m_rad;
        row.value = rep.nonradial();
        row.route_b_value = rep.route_b_total - rep.m_rad;
        row.even = row.value % 2 == 0;
        row.at_least_two = row.value >= 2;
        row.ambiguous = rep.ambiguous;
        row.lambdas = rep.spectrum.lambdas;
    });
    return rows;
}

} // namespace henon
