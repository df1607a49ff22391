#pragma once

// Spec files and data exchange: body and density specs (JSON), tabulated
// radial functions and profiles (CSV), grid fields (little-endian f64 binary
// with a JSON sidecar, CSV for n <= 2).

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fracradon/body.hpp"
#include "fracradon/density.hpp"
#include "fracradon/error.hpp"
#include "fracradon/field.hpp"
#include "fracradon/profile.hpp"

namespace fracradon {

/// Malformed or unreadable input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// {dim, family, params, symmetric}. Families: ball {r}, cube {a},
/// lp_ball {p, r}, ellipsoid {axes}, tabulated {file}. An optional
/// "volume_one": true rescales to volume 1. Relative file names resolve
/// against `base`.
StarBody body_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
StarBody load_body(const std::filesystem::path& path);
/// Built-in family by name with default parameters, rescaled to volume 1.
StarBody named_body(const std::string& family, int n);

/// Rows u_1, ..., u_n, rho (header line optional); directions are normalized.
StarBody read_tabulated_body(const std::filesystem::path& path, bool symmetric);

/// {family, params}. Families: gaussian {sigma, amplitude}, normal {sigma},
/// bump {T, amplitude}, anisotropic_gaussian {sigmas, axis},
/// indicator {body} and grid {file} (a field file with sidecar).
Density density_from_json(const nlohmann::json& j, int n, const std::filesystem::path& base = {});
Density load_density(const std::filesystem::path& path, int n);
/// Built-in family by name with default parameters.
Density named_density(const std::string& family, int n);

/// gaussian, exponential, cauchy, bump, or a CSV file of t, phi rows on a
/// uniform grid starting at t = 0.
Profile named_profile(const std::string& family, double param = 1.0);
Profile read_tabulated_profile(const std::filesystem::path& path);

/// Writes `path` (raw samples) and the sidecar path with extension .json.
void write_field(const GridField& f, const std::filesystem::path& path);
GridField read_field(const std::filesystem::path& path);
/// Node coordinates followed by the value; n <= 2.
std::string field_csv(const GridField& f);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace fracradon
