#include "henon/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "henon/errors.hpp"

namespace henon::io {

json to_json(const RadialProfile& p) {
    json doc = {
        {"alpha", p.params.alpha},
        {"p", p.params.p},
        {"n", p.params.n_nodal},
        {"d", p.d},
        {"grid", p.grid},
        {"u", p.u},
        {"du", p.du},
        {"nodal_radii", p.nodal_radii},
        {"tolerances",
         {{"rtol", p.tolerances.rtol},
          {"atol", p.tolerances.atol},
          {"root_tol", p.tolerances.root_tol},
          {"boundary_tol", p.tolerances.boundary_tol},
          {"residual_tol", p.tolerances.residual_tol}}},
    };
    if (p.params.coefficient != 1.0) doc["coefficient"] = p.params.coefficient;
    return doc;
}

json to_json(const RadialSpectrum& s) {
    return {{"lambdas", s.lambdas}, {"T", s.T}, {"M", s.M}, {"eig_tol", s.eig_tol}};
}

json to_json(const MorseReport& r) {
    json bounds = json::array();
    for (const auto& b : r.bounds)
        bounds.push_back({{"name", b.name}, {"required", b.required}, {"actual", b.actual}, {"pass", b.pass}});
    json ties = json::array();
    for (const auto& t : r.ties) ties.push_back({{"j", t.j}, {"k", t.k}, {"gap", t.gap}, {"band", t.band}});
    json doc = {
        {"alpha", r.params.alpha},
        {"p", r.params.p},
        {"n", r.params.n_nodal},
        {"m_rad", r.m_rad},
        {"lambdas", r.spectrum.lambdas},
        {"angular_counts", r.angular_counts},
        {"m_total", r.m_total},
        {"route_b_total", r.route_b_total},
        {"mode_counts", r.mode_counts},
        {"bounds", bounds},
        {"ties", ties},
        {"ambiguous", r.ambiguous},
        {"spectrum", to_json(r.spectrum)},
    };
    if (r.params.coefficient != 1.0) doc["coefficient"] = r.params.coefficient;
    return doc;
}

json to_json(const ComparisonReport& c) {
    json entries = json::array();
    for (const auto& e : c.entries)
        entries.push_back({{"g_name", e.g_name},
                           {"k", e.k},
                           {"Q_alpha", e.Q_alpha},
                           {"Q_beta_of_wk", e.Q_beta_of_wk},
                           {"kappa", e.kappa},
                           {"slack", e.slack},
                           {"pass", e.pass}});
    return {{"alpha", c.alpha}, {"beta", c.beta}, {"entries", entries}, {"pass", c.passed()}};
}

json to_json(const SweepResult& s) {
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back(to_json(r.report));
    json jumps = json::array();
    for (const auto& [a, b] : s.jumps) jumps.push_back({a, b});
    return {{"p", s.p}, {"n", s.n}, {"rows", rows}, {"jumps", jumps}, {"violations", s.violations},
            {"pass", s.passed()}};
}

json to_json(const std::vector<RemarkRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"p", r.p},
                       {"m_total", r.m_total},
                       {"m_rad", r.m_rad},
                       {"value", r.value},
                       {"route_b_value", r.route_b_value},
                       {"even", r.even},
                       {"at_least_two", r.at_least_two},
                       {"expected_large_p", r.expected_large_p},
                       {"ambiguous", r.ambiguous},
                       {"lambdas", r.lambdas}});
    return out;
}

namespace {

const json& field(const json& obj, const std::string& name, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path.empty() ? "<root>" : path, "expected a JSON object");
    const std::string full = path.empty() ? name : path + "." + name;
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(full, "missing field \"" + full + "\"");
    return *it;
}

double number(const json& obj, const std::string& name, const std::string& path = "") {
    const json& v = field(obj, name, path);
    const std::string full = path.empty() ? name : path + "." + name;
    if (!v.is_number()) throw SchemaError(full, "field \"" + full + "\" must be a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& obj, const std::string& name) {
    const json& v = field(obj, name, "");
    if (!v.is_array()) throw SchemaError(name, "field \"" + name + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw SchemaError(name, "field \"" + name + "\" must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

RadialProfile profile_from_json(const json& doc) {
    RadialProfile p;
    p.params.alpha = number(doc, "alpha");
    p.params.p = number(doc, "p");
    const json& n = field(doc, "n", "");
    if (!n.is_number_integer()) throw SchemaError("n", "field \"n\" must be an integer");
    p.params.n_nodal = n.get<int>();
    if (doc.contains("coefficient")) p.params.coefficient = number(doc, "coefficient");
    p.d = number(doc, "d");
    p.grid = numbers(doc, "grid");
    p.u = numbers(doc, "u");
    p.du = numbers(doc, "du");
    p.nodal_radii = numbers(doc, "nodal_radii");
    const json& tol = field(doc, "tolerances", "");
    p.tolerances.rtol = number(tol, "rtol", "tolerances");
    p.tolerances.atol = number(tol, "atol", "tolerances");
    p.tolerances.root_tol = number(tol, "root_tol", "tolerances");
    p.tolerances.boundary_tol = number(tol, "boundary_tol", "tolerances");
    p.tolerances.residual_tol = number(tol, "residual_tol", "tolerances");
    if (p.u.size() != p.grid.size()) throw SchemaError("u", "\"u\" and \"grid\" must have equal length");
    if (p.du.size() != p.grid.size()) throw SchemaError("du", "\"du\" and \"grid\" must have equal length");
    try {
        p.params.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("params", e.what());
    }
    return p;
}

void save_profile(const RadialProfile& profile, const std::filesystem::path& path) {
    save_report(to_json(profile), path);
}

RadialProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return profile_from_json(doc);
}

void save_report(const json& doc, const std::filesystem::path& path) {
    write_text(doc.dump(2) + "\n", path);
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string sweep_csv(const SweepResult& s) {
    std::size_t J = 0;
    for (const auto& r : s.rows) J = std::max(J, r.report.spectrum.lambdas.size());
    std::ostringstream os;
    os << "alpha,p,n,m_rad,m_total";
    for (std::size_t j = 1; j <= J; ++j) os << ",lambda_" << j;
    os << ",bounds_pass\r\n";
    for (const auto& r : s.rows) {
        const auto& rep = r.report;
        os << csv_field(format_double(r.alpha)) << ',' << csv_field(format_double(s.p)) << ',' << s.n << ','
           << rep.m_rad << ',' << rep.m_total;
        for (std::size_t j = 0; j < J; ++j) {
            os << ',';
            if (j < rep.spectrum.lambdas.size()) os << csv_field(format_double(rep.spectrum.lambdas[j]));
        }
        os << ',' << (rep.bounds_pass() ? "true" : "false") << "\r\n";
    }
    return os.str();
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace henon::io
