#include "henon/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "henon/errors.hpp"
#include "henon/io.hpp"
#include "henon/morse.hpp"
#include "henon/verify.hpp"

namespace henon {

std::vector<double> parse_range(const std::string& spec) {
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw std::invalid_argument("malformed number \"" + s + "\" in range \"" + spec + "\"");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
        if (!s.empty() && s.back() == sep) parts.emplace_back();
        return parts;
    };

    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step, got \"" + spec + "\"");
        const double start = to_double(parts[0]), stop = to_double(parts[1]), step = to_double(parts[2]);
        if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
        if (stop < start) throw std::invalid_argument("range stop must be >= start");
        for (long i = 0;; ++i) {
            double v = start + static_cast<double>(i) * step;
            if (v > stop + 1e-12) break;
            if (std::abs(v - stop) <= 1e-12) v = stop;
            out.push_back(v);
        }
    } else {
        for (const auto& s : split(spec, ',')) out.push_back(to_double(s));
    }
    if (out.empty()) throw std::invalid_argument("empty range \"" + spec + "\"");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1])) throw std::invalid_argument("range must be strictly increasing: \"" + spec + "\"");
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const VerificationFailure*>(&e)) return kAssertionFailed;
    if (dynamic_cast<const NonConvergence*>(&e)) return kNonConvergence;
    return kUsageError;   // schema, argument and I/O errors
}

namespace {

struct Settings {
    double alpha = 0.0;
    double p = 3.0;
    int nodes = 1;
    std::string profile_path;
    std::string out_path;
    std::string csv_path;
    std::string alphas = "0:6:1";
    std::string grid = "default";
    SolverOptions solver;
    MorseOptions morse;
    unsigned threads = 0;
};

void add_problem(CLI::App* cmd, Settings& s, bool allow_profile) {
    auto* alpha = cmd->add_option("--alpha", s.alpha, "weight exponent alpha >= 0")->capture_default_str();
    auto* p = cmd->add_option("--p", s.p, "power p > 1")->capture_default_str();
    auto* n = cmd->add_option("--nodes", s.nodes, "number of nodal sets n >= 1")->capture_default_str();
    if (allow_profile) {
        auto* prof = cmd->add_option("--profile", s.profile_path, "read the profile from a saved JSON file");
        prof->excludes(alpha)->excludes(p)->excludes(n);
    }
}

void add_solver(CLI::App* cmd, Settings& s) {
    cmd->add_option("--rtol", s.solver.rtol, "integrator relative tolerance")->capture_default_str();
    cmd->add_option("--atol", s.solver.atol, "integrator absolute tolerance")->capture_default_str();
}

void add_spectrum(CLI::App* cmd, Settings& s) {
    auto& sp = s.morse.spectrum;
    cmd->add_option("--eig-tol", sp.eig_tol, "relative eigenvalue tolerance")->capture_default_str();
    cmd->add_option("--intervals", sp.intervals, "finite-difference intervals M")->capture_default_str();
    cmd->add_option("--ratio", sp.geometric_ratio, "geometric mesh ratio of the mode-sum route")->capture_default_str();
    cmd->add_option("--truncation-tol", sp.truncation_tol, "bound on |V(-T)|")->capture_default_str();
}

void add_threads(CLI::App* cmd, Settings& s) {
    cmd->add_option("--threads", s.threads, "worker threads (0 = all cores)")->capture_default_str();
}

void check_positive(const Settings& s) {
    const auto& sp = s.morse.spectrum;
    for (double v : {s.solver.rtol, s.solver.atol, sp.eig_tol, sp.truncation_tol})
        if (!(v > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(sp.geometric_ratio > 1.0)) throw std::invalid_argument("--ratio must exceed 1");
    if (sp.intervals < 2) throw std::invalid_argument("--intervals must be >= 2");
}

RadialProfile obtain_profile(const Settings& s) {
    if (!s.profile_path.empty()) {
        RadialProfile prof = io::load_profile(s.profile_path);
        check_profile(prof);
        return prof;
    }
    return solve_nodal({s.alpha, s.p, s.nodes, 1.0}, s.solver);
}

void emit(const io::json& doc, const Settings& s, std::ostream& out) {
    if (s.out_path.empty())
        out << doc.dump(2) << "\n";
    else
        io::save_report(doc, s.out_path);
}

io::json diagnostic(const std::string& kind, const std::string& message, int code) {
    return {{"error", kind}, {"message", message}, {"exit_code", code}};
}

int fail(std::ostream& err, io::json diag) {
    err << diag.dump() << std::endl;
    return diag["exit_code"].get<int>();
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial nodal solutions of the Hénon equation on the unit disk: profiles, "
                 "singular radial spectra, Morse indices and theorem checks."};
    app.require_subcommand(1);
    Settings s;

    auto* solve = app.add_subcommand("solve", "compute the radial solution with n nodal sets");
    add_problem(solve, s, false);
    add_solver(solve, s);
    solve->add_option("--out", s.out_path, "write the profile JSON here (default: stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "negative radial eigenvalues of the singular problem");
    add_problem(spectrum, s, true);
    add_solver(spectrum, s);
    add_spectrum(spectrum, s);
    spectrum->add_option("--out", s.out_path, "write the spectrum JSON here (default: stdout)");

    auto* morse = app.add_subcommand("morse", "Morse index by two routes, with lower-bound checks");
    add_problem(morse, s, true);
    add_solver(morse, s);
    add_spectrum(morse, s);
    morse->add_option("--out", s.out_path, "write the report JSON here (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "Morse indices along an alpha grid");
    sweep->add_option("--p", s.p, "power p > 1")->required();
    sweep->add_option("--nodes", s.nodes, "number of nodal sets n >= 1")->required();
    sweep->add_option("--alphas", s.alphas, "start:stop:step or a,b,c")->required();
    sweep->add_option("--csv", s.csv_path, "write the sweep table as CSV");
    sweep->add_option("--out", s.out_path, "write the sweep JSON here (default: stdout unless --csv)");
    add_spectrum(sweep, s);
    add_threads(sweep, s);

    auto* verify = app.add_subcommand("verify", "run the full verification battery");
    verify->add_option("--grid", s.grid, "parameter grid")->check(CLI::IsMember({"default"}))->capture_default_str();
    verify->add_option("--out", s.out_path, "write the results JSON here");
    add_spectrum(verify, s);
    add_threads(verify, s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {   // --help and friends
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        return fail(err, diagnostic("usage", e.what(), kUsageError));
    }

    try {
        check_positive(s);
        if (*solve) {
            const RadialProfile prof = solve_nodal({s.alpha, s.p, s.nodes, 1.0}, s.solver);
            emit(io::to_json(prof), s, out);
        } else if (*spectrum) {
            const RadialProfile prof = obtain_profile(s);
            emit(io::to_json(radial_spectrum(prof, s.morse.spectrum)), s, out);
        } else if (*morse) {
            const RadialProfile prof = obtain_profile(s);
            const auto& P = prof.params;
            MorseReport rep = assemble_morse(prof, s.morse);
            rep.bounds = check_lower_bounds(rep, autonomous_report(P.p, P.n_nodal, P.alpha, s.morse));
            emit(io::to_json(rep), s, out);
            if (!rep.bounds_pass()) {
                io::json diag = diagnostic("assertion", "lower bound violated", kAssertionFailed);
                for (const auto& b : rep.bounds)
                    if (!b.pass) diag["violations"].push_back(b.name);
                return fail(err, diag);
            }
        } else if (*sweep) {
            const SweepResult res = monotonicity_sweep(s.p, s.nodes, parse_range(s.alphas), s.morse, s.threads);
            if (!s.csv_path.empty()) io::write_text(io::sweep_csv(res), s.csv_path);
            if (!s.out_path.empty() || s.csv_path.empty()) emit(io::to_json(res), s, out);
            if (!res.passed()) {
                io::json diag = diagnostic("assertion", "sweep assertions failed", kAssertionFailed);
                diag["violations"] = res.violations;
                return fail(err, diag);
            }
        } else if (*verify) {
            VerifyOptions vo;
            vo.morse = s.morse;
            vo.threads = s.threads;
            const auto results = run_verification(vo, &err);
            io::json doc = io::json::array();
            for (const auto& r : results) {
                out << format_result(r) << "\n";
                doc.push_back({{"id", r.id}, {"name", r.name}, {"gating", r.gating}, {"pass", r.pass}, {"detail", r.detail}});
            }
            if (!s.out_path.empty()) io::save_report(doc, s.out_path);
            if (!all_gating_pass(results)) {
                io::json diag = diagnostic("assertion", "verification battery failed", kAssertionFailed);
                for (const auto& r : results)
                    if (r.gating && !r.pass) diag["failed_criteria"].push_back(r.id);
                return fail(err, diag);
            }
        }
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        const char* kind = code == kAssertionFailed ? "assertion"
                           : code == kNonConvergence ? "non_convergence"
                           : dynamic_cast<const SchemaError*>(&e)  ? "schema"
                           : dynamic_cast<const std::logic_error*>(&e) ? "usage"
                                                                        : "io";
        io::json diag = diagnostic(kind, e.what(), code);
        if (const auto* se = dynamic_cast<const SchemaError*>(&e)) diag["field"] = se->field();
        return fail(err, diag);
    }
    return kSuccess;
}

} // namespace henon
