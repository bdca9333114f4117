#pragma once

// JSON and CSV persistence. Doubles are written in shortest round-trip form,
// so save → load reproduces every value bit for bit.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "henon/morse.hpp"
#include "henon/radial_solver.hpp"
#include "henon/spectrum.hpp"
#include "henon/transform.hpp"

namespace henon::io {

using nlohmann::json;

json to_json(const RadialProfile& profile);
json to_json(const RadialSpectrum& spectrum);
json to_json(const MorseReport& report);
json to_json(const ComparisonReport& report);
json to_json(const SweepResult& sweep);
json to_json(const std::vector<RemarkRow>& rows);

/// Throws SchemaError naming the first missing or mistyped field.
RadialProfile profile_from_json(const json& doc);

void save_profile(const RadialProfile& profile, const std::filesystem::path& path);
RadialProfile load_profile(const std::filesystem::path& path);

/// Writes doc.dump(2) followed by a newline.
void save_report(const json& doc, const std::filesystem::path& path);

/// Columns alpha, p, n, m_rad, m_total, lambda_1..lambda_J, bounds_pass, where J
/// is the largest count in the sweep; missing eigenvalues are empty cells.
std::string sweep_csv(const SweepResult& sweep);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& value);

/// %.17g
std::string format_double(double value);

void write_text(const std::string& text, const std::filesystem::path& path);

} // namespace henon::io
