#include "henon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "henon/parallel.hpp"
#include "henon/transform.hpp"

namespace henon {

namespace {

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

std::string point(double alpha, double p, int n) {
    return "(alpha=" + fmt(alpha) + ", p=" + fmt(p) + ", n=" + std::to_string(n) + ")";
}

bool same_integers(const MorseReport& a, const MorseReport& b) {
    return a.m_rad == b.m_rad && a.m_total == b.m_total && a.route_b_total == b.route_b_total &&
           a.angular_counts == b.angular_counts && a.mode_counts == b.mode_counts;
}

struct Cell {
    double p;
    int n;
    std::optional<SweepResult> sweep;
    std::string error;
};

struct Findings {
    std::vector<std::string> items;
    void add(std::string s) { items.push_back(std::move(s)); }
    bool empty() const { return items.empty(); }
    std::string summary(const std::string& ok) const {
        if (items.empty()) return ok;
        return std::to_string(items.size()) + " failure(s); first: " + items.front();
    }
};

} // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& opt, std::ostream* log) {
    auto say = [&](const std::string& s) {
        if (log) *log << s << std::endl;
    };
    std::vector<CriterionResult> results;

    // Grid sweeps feed criteria 1, 2, 3, 5 and 7.
    std::vector<Cell> cells;
    for (double p : opt.ps)
        for (int n : opt.ns) cells.push_back({p, n, std::nullopt, {}});
    for (auto& c : cells) {
        try {
            c.sweep = monotonicity_sweep(c.p, c.n, opt.alphas, opt.morse, opt.threads);
            std::string line = "sweep p=" + fmt(c.p) + " n=" + std::to_string(c.n) + " m_total:";
            for (const auto& r : c.sweep->rows) line += " " + std::to_string(r.report.m_total);
            say(line);
        } catch (const std::exception& e) {
            c.error = e.what();
            say("sweep p=" + fmt(c.p) + " n=" + std::to_string(c.n) + " failed: " + c.error);
        }
    }
    const std::size_t grid_points = cells.size() * opt.alphas.size();

    {   // 1: m_rad = n
        Findings f;
        for (const auto& c : cells) {
            if (!c.sweep) {
                f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
                continue;
            }
            for (const auto& r : c.sweep->rows)
                if (r.report.m_rad != c.n || r.report.spectrum.count() != c.n)
                    f.add(point(r.alpha, c.p, c.n) + ": m_rad = " + std::to_string(r.report.m_rad) +
                          ", negative radial eigenvalues = " + std::to_string(r.report.spectrum.count()));
        }
        results.push_back({1, "radial Morse index equals n", true, f.empty(),
                           f.summary("m_rad = n on all " + std::to_string(grid_points) + " grid points")});
    }
    {   // 2: monotone in α
        Findings f;
        std::size_t jumps = 0;
        for (const auto& c : cells) {
            if (!c.sweep) {
                f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
                continue;
            }
            jumps += c.sweep->jumps.size();
            const auto& rows = c.sweep->rows;
            for (std::size_t i = 1; i < rows.size(); ++i)
                if (rows[i].report.m_total < rows[i - 1].report.m_total)
                    f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": m(" + fmt(rows[i - 1].alpha) + ") = " +
                          std::to_string(rows[i - 1].report.m_total) + " > m(" + fmt(rows[i].alpha) +
                          ") = " + std::to_string(rows[i].report.m_total));
        }
        results.push_back({2, "Morse index non-decreasing in alpha", true, f.empty(),
                           f.summary("non-decreasing for all " + std::to_string(cells.size()) + " (p, n) sweeps; " +
                                     std::to_string(jumps) + " increases recorded")});
    }
    {   // 3: two-route agreement
        Findings f;
        for (const auto& c : cells) {
            if (!c.sweep) {
                f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
                continue;
            }
            for (const auto& r : c.sweep->rows) {
                const auto& m = r.report;
                if (m.ambiguous)
                    f.add(point(r.alpha, c.p, c.n) + ": unresolved tie");
                else if (m.m_total != m.route_b_total || m.m_rad != m.spectrum.count())
                    f.add(point(r.alpha, c.p, c.n) + ": decomposition " + std::to_string(m.m_total) +
                          " vs mode sum " + std::to_string(m.route_b_total));
            }
        }
        results.push_back({3, "two-route agreement", true, f.empty(),
                           f.summary("decomposition and mode-sum totals equal on all " +
                                     std::to_string(grid_points) + " grid points")});
    }

    {   // 4: transform correspondence
        say("transform correspondence ...");
        struct Item {
            std::size_t cell;
            std::size_t row;
            double sup = 0.0;
            bool integers_match = false;
            std::string error;
        };
        std::vector<Item> items;
        std::vector<std::optional<RadialProfile>> bases(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!cells[c].sweep) continue;
            for (std::size_t r = 0; r < opt.alphas.size(); ++r) items.push_back({c, r, 0.0, false, {}});
        }
        parallel_for(cells.size(), opt.threads, [&](std::size_t c) {
            if (cells[c].sweep) bases[c] = solve_nodal({0.0, cells[c].p, cells[c].n, 1.0});
        });
        parallel_for(items.size(), opt.threads, [&](std::size_t i) {
            Item& it = items[i];
            const Cell& cell = cells[it.cell];
            const SweepRow& row = cell.sweep->rows[it.row];
            try {
                const RadialProfile moved = transform_solution(*bases[it.cell], row.alpha);
                const RadialProfile direct = solve_nodal({row.alpha, cell.p, cell.n, 1.0});
                double diff = 0.0;
                for (const auto* g : {&moved.grid, &direct.grid})
                    for (double r : *g) diff = std::max(diff, std::abs(moved.evaluate(r).first - direct.evaluate(r).first));
                it.sup = diff / direct.max_abs();
                it.integers_match = same_integers(assemble_morse(moved, opt.morse), row.report);
            } catch (const std::exception& e) {
                it.error = e.what();
            }
        });
        Findings f;
        double worst = 0.0;
        for (const auto& c : cells)
            if (!c.sweep) f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
        for (const auto& it : items) {
            const Cell& cell = cells[it.cell];
            const double alpha = cell.sweep->rows[it.row].alpha;
            if (!it.error.empty()) {
                f.add(point(alpha, cell.p, cell.n) + ": " + it.error);
                continue;
            }
            worst = std::max(worst, it.sup);
            if (!(it.sup <= opt.transform_tol))
                f.add(point(alpha, cell.p, cell.n) + ": sup-norm relative difference " + fmt(it.sup, 3));
            if (!it.integers_match) f.add(point(alpha, cell.p, cell.n) + ": Morse integers differ");
        }
        results.push_back({4, "transform correspondence", true, f.empty(),
                           f.summary("worst sup-norm relative difference " + fmt(worst, 3) + " <= " +
                                     fmt(opt.transform_tol, 3) + "; Morse integers identical on " +
                                     std::to_string(items.size()) + " points")});
    }

    {   // 5: even-α eigenvalue scaling
        Findings f;
        double worst = 0.0;
        std::size_t compared = 0;
        for (const auto& c : cells) {
            if (!c.sweep) {
                f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
                continue;
            }
            auto find = [&](double a) -> const MorseReport* {
                for (const auto& r : c.sweep->rows)
                    if (r.alpha == a) return &r.report;
                return nullptr;
            };
            const MorseReport* base = find(0.0);
            for (double a : opt.scaling_alphas) {
                const MorseReport* rep = find(a);
                if (!base || !rep) {
                    f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": alpha 0 or " + fmt(a) + " missing from grid");
                    continue;
                }
                const double m2 = std::pow((a + 2.0) / 2.0, 2.0);
                const auto& l0 = base->spectrum.lambdas;
                const auto& la = rep->spectrum.lambdas;
                if (l0.size() != la.size()) {
                    f.add(point(a, c.p, c.n) + ": eigenvalue counts differ");
                    continue;
                }
                for (std::size_t j = 0; j < l0.size(); ++j) {
                    const double rel = std::abs(la[j] - m2 * l0[j]) / std::abs(m2 * l0[j]);
                    worst = std::max(worst, rel);
                    ++compared;
                    if (!(rel <= opt.scaling_tol))
                        f.add(point(a, c.p, c.n) + ": lambda_" + std::to_string(j + 1) + " relative error " + fmt(rel, 3));
                }
            }
        }
        results.push_back({5, "even-alpha eigenvalue scaling", true, f.empty() && compared > 0,
                           f.summary("worst relative error " + fmt(worst, 3) + " <= " + fmt(opt.scaling_tol, 3) +
                                     " over " + std::to_string(compared) + " eigenvalues")});
    }

    {   // 6: quadratic-form comparison
        say("quadratic-form comparison ...");
        const auto battery = standard_battery();
        struct Item {
            double p;
            int n;
            double alpha;
            std::vector<ComparisonReport> reports;
            std::string error;
        };
        std::vector<Item> items;
        for (double p : opt.ps)
            for (int n : opt.ns)
                for (double a : opt.form_alphas) items.push_back({p, n, a, {}, {}});
        parallel_for(items.size(), opt.threads, [&](std::size_t i) {
            Item& it = items[i];
            try {
                const RadialProfile u = solve_nodal({it.alpha, it.p, it.n, 1.0});
                for (double b : opt.form_alphas)
                    if (b >= it.alpha) it.reports.push_back(verify_form_comparison(u, b, battery));
            } catch (const std::exception& e) {
                it.error = e.what();
            }
        });
        Findings f;
        std::size_t checks = 0;
        double worst_radial = 0.0, worst_violation = 0.0;
        for (const auto& it : items) {
            if (!it.error.empty()) {
                f.add(point(it.alpha, it.p, it.n) + ": " + it.error);
                continue;
            }
            for (const auto& rep : it.reports)
                for (const auto& e : rep.entries) {
                    ++checks;
                    const double rel = std::abs(e.slack) / (1.0 + std::abs(e.Q_alpha));
                    if (e.k == 0) worst_radial = std::max(worst_radial, rel);
                    else if (e.slack < 0.0) worst_violation = std::max(worst_violation, -e.slack / (1.0 + std::abs(e.Q_alpha)));
                    if (!e.pass)
                        f.add(point(it.alpha, it.p, it.n) + " beta=" + fmt(rep.beta) + " " + e.g_name +
                              " k=" + std::to_string(e.k) + ": slack " + fmt(e.slack, 3));
                }
        }
        results.push_back({6, "quadratic-form comparison", true, f.empty() && checks > 0,
                           f.summary(std::to_string(checks) + " comparisons; radial equality to " + fmt(worst_radial, 3) +
                                     ", largest scaled excess for k >= 1: " + fmt(worst_violation, 3) +
                                     " (tolerance 1e-7)")});
    }

    {   // 7: lower bounds
        Findings f;
        std::size_t checked = 0;
        for (const auto& c : cells) {
            if (!c.sweep) {
                f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + c.error);
                continue;
            }
            for (const auto& v : c.sweep->violations)
                if (v.find("autonomous normalizations") != std::string::npos)
                    f.add("p=" + fmt(c.p) + " n=" + std::to_string(c.n) + ": " + v);
            for (const auto& r : c.sweep->rows)
                for (const auto& b : r.report.bounds) {
                    ++checked;
                    if (!b.pass)
                        f.add(point(r.alpha, c.p, c.n) + ": " + b.name + " requires " + std::to_string(b.required) +
                              ", got " + std::to_string(b.actual));
                }
        }
        results.push_back({7, "lower-bound theorems", true, f.empty() && checked > 0,
                           f.summary(std::to_string(checked) + " bound checks hold on " + std::to_string(grid_points) +
                                     " grid points")});
    }

    {   // 8: square well
        const double T = std::numbers::pi;
        const std::vector<double> exact{-4.0, -1.0};
        Findings f;
        const RadialSpectrum sp =
            negative_spectrum(SchrodingerProblem::constant_well(T, opt.well_intervals, -5.0), 1e-13);
        double worst = 0.0;
        if (sp.count() != 2) f.add("expected 2 negative eigenvalues, got " + std::to_string(sp.count()));
        for (int j = 0; j < std::min(sp.count(), 2); ++j) {
            worst = std::max(worst, std::abs(sp.lambdas[j] - exact[j]));
            if (!(std::abs(sp.lambdas[j] - exact[j]) <= opt.well_tol))
                f.add("lambda_" + std::to_string(j + 1) + " = " + fmt(sp.lambdas[j], 12));
        }
        std::vector<double> orders;
        for (std::size_t M = 256; M <= 1024; M *= 2) {
            const auto a = negative_spectrum(SchrodingerProblem::constant_well(T, M, -5.0), 1e-14);
            const auto b = negative_spectrum(SchrodingerProblem::constant_well(T, 2 * M, -5.0), 1e-14);
            for (int j = 0; j < 2 && a.count() == 2 && b.count() == 2; ++j) {
                const double order = std::log2(std::abs(a.lambdas[j] - exact[j]) / std::abs(b.lambdas[j] - exact[j]));
                orders.push_back(order);
                if (!(std::abs(order - 2.0) <= 0.05)) f.add("observed order " + fmt(order, 4) + " at M = " + std::to_string(M));
            }
        }
        const auto [lo, hi] = std::minmax_element(orders.begin(), orders.end());
        results.push_back({8, "square-well spectral validation", true, f.empty() && !orders.empty(),
                           f.summary("2 eigenvalues within " + fmt(worst, 3) + " of {-4, -1} at M = " +
                                     std::to_string(opt.well_intervals) + "; observed order " +
                                     (orders.empty() ? std::string("n/a") : fmt(*lo, 6) + " to " + fmt(*hi, 6)))});
    }

    {   // 9: observational
        say("remark probe ...");
        CriterionResult r{9, "remark probe (observational)", false, true, {}};
        try {
            const auto rows = remark_probe(opt.remark_ps, opt.morse, opt.threads);
            std::string detail;
            for (const auto& row : rows) {
                r.pass = r.pass && row.even && row.at_least_two;
                detail += (detail.empty() ? "" : "; ") + std::string("p=") + fmt(row.p) + ": m(u0)-m_rad(u0) = " +
                          std::to_string(row.value) + " (mode sum " + std::to_string(row.route_b_value) +
                          ", expected for large p: " + std::to_string(row.expected_large_p) +
                          (row.ambiguous ? ", boundary-ambiguous" : "") + ")";
            }
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult& r) {
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + "criterion " + std::to_string(r.id) + " " + r.name +
           (r.gating ? "" : " [non-gating]") + ": " + r.detail;
}

bool all_gating_pass(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return !r.gating || r.pass; });
}

} // namespace henon
