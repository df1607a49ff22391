#include "fracradon/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fracradon/verify.hpp"

namespace fracradon {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve_path(const fs::path& p, const fs::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

double param(const json& params, const char* key, double fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  if (!params[key].is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return params[key].get<double>();
}

std::vector<double> param_list(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key) || !params[key].is_array()) {
    throw ConfigError(std::string("parameter '") + key + "' must be an array of numbers");
  }
  return params[key].get<std::vector<double>>();
}

std::vector<std::vector<double>> read_numeric_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      throw ConfigError(path.string() + ": non-numeric row '" + line + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path.string() + ": no data rows");
  return rows;
}

fs::path sidecar_of(const fs::path& p) {
  fs::path s = p;
  return s.replace_extension(".json");
}

}  // namespace

StarBody read_tabulated_body(const fs::path& path, bool symmetric) {
  const auto rows = read_numeric_rows(path);
  const std::size_t width = rows.front().size();
  if (width < 3) throw ConfigError(path.string() + ": rows need n >= 2 components and rho");
  std::vector<Direction> dirs;
  std::vector<double> rho;
  for (const auto& r : rows) {
    if (r.size() != width) throw ConfigError(path.string() + ": ragged rows");
    dirs.emplace_back(std::vector<double>(r.begin(), r.end() - 1));
    rho.push_back(r.back());
  }
  return StarBody::tabulated(dirs, rho, symmetric);
}

StarBody body_from_json(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ConfigError("body spec must be a JSON object");
  if (!j.contains("family")) throw ConfigError("body spec: missing 'family'");
  const std::string family = j["family"].get<std::string>();
  const json params = j.value("params", json::object());
  const bool symmetric = j.value("symmetric", true);
  const int n = j.value("dim", 0);
  auto need_dim = [&] {
    if (n < 1) throw ConfigError("body spec: 'dim' must be a positive integer");
  };
  auto body = [&]() -> StarBody {
    if (family == "ball") {
      need_dim();
      return StarBody::ball(n, param(params, "r", 1.0));
    }
    if (family == "cube") {
      need_dim();
      return StarBody::cube(n, param(params, "a", 1.0));
    }
    if (family == "lp_ball") {
      need_dim();
      return StarBody::lp_ball(n, param(params, "p", 2.0), param(params, "r", 1.0));
    }
    if (family == "ellipsoid") {
      auto axes = param_list(params, "axes");
      if (n > 0 && static_cast<int>(axes.size()) != n) throw ConfigError("body spec: axes length != dim");
      return StarBody::ellipsoid(std::move(axes));
    }
    if (family == "tabulated") {
      if (!params.contains("file")) throw ConfigError("body spec: tabulated needs params.file");
      auto K = read_tabulated_body(resolve_path(params["file"].get<std::string>(), base), symmetric);
      if (n > 0 && K.dim() != n) throw ConfigError("body spec: tabulated file dimension != dim");
      return K;
    }
    throw ConfigError("body spec: unknown family '" + family + "'");
  }();
  if (j.value("volume_one", false)) return volume_one(body);
  return body;
}

StarBody load_body(const fs::path& path) { return body_from_json(read_json(path), path.parent_path()); }

StarBody named_body(const std::string& family, int n) {
  if (family == "ball") return volume_one(StarBody::ball(n));
  if (family == "cube") return volume_one(StarBody::cube(n));
  if (family == "l1_ball") return volume_one(StarBody::lp_ball(n, 1.0));
  throw ConfigError("unknown body '" + family + "' (ball, cube, l1_ball, or a spec file)");
}

Density density_from_json(const json& j, int n, const fs::path& base) {
  if (!j.is_object() || !j.contains("family")) throw ConfigError("density spec: missing 'family'");
  const std::string family = j["family"].get<std::string>();
  const json params = j.value("params", json::object());
  if (family == "gaussian") return Density::gaussian(n, param(params, "sigma", 1.0), param(params, "amplitude", 1.0));
  if (family == "normal") return Density::normal(n, param(params, "sigma", 1.0));
  if (family == "bump") return Density::bump(n, param(params, "T", 1.0), param(params, "amplitude", 1.0));
  if (family == "anisotropic_gaussian") {
    const auto sigmas = param_list(params, "sigmas");
    if (static_cast<int>(sigmas.size()) != n) throw ConfigError("density spec: sigmas length != n");
    std::vector<double> axis(n, 0.0);
    axis[0] = 1.0;
    if (params.contains("axis")) axis = param_list(params, "axis");
    return Density::anisotropic_gaussian(sigmas, Direction(axis), param(params, "amplitude", 1.0));
  }
  if (family == "indicator") {
    if (!params.contains("body")) throw ConfigError("density spec: indicator needs params.body");
    const auto& b = params["body"];
    const StarBody K = b.is_string() ? named_body(b.get<std::string>(), n) : body_from_json(b, base);
    return Density::indicator(K, param(params, "value", 1.0));
  }
  if (family == "grid") {
    if (!params.contains("file")) throw ConfigError("density spec: grid needs params.file");
    const auto field = read_field(resolve_path(params["file"].get<std::string>(), base));
    if (field.dim() != n) throw ConfigError("density spec: grid field dimension != n");
    return grid_density(field, static_cast<int>(param(params, "order", 4)));
  }
  throw ConfigError("density spec: unknown family '" + family + "'");
}

Density load_density(const fs::path& path, int n) {
  return density_from_json(read_json(path), n, path.parent_path());
}

Density named_density(const std::string& family, int n) {
  if (family == "gaussian") return Density::gaussian(n);
  if (family == "normal") return Density::normal(n);
  if (family == "bump") return Density::bump(n);
  throw ConfigError("unknown density '" + family + "' (gaussian, normal, bump, or a spec file)");
}

Profile read_tabulated_profile(const fs::path& path) {
  const auto rows = read_numeric_rows(path);
  std::vector<double> t, phi;
  for (const auto& r : rows) {
    if (r.size() != 2) throw ConfigError(path.string() + ": profile rows are t, phi");
    t.push_back(r[0]);
    phi.push_back(r[1]);
  }
  return Profile::tabulated(t, phi);
}

Profile named_profile(const std::string& family, double p) {
  if (family == "gaussian") return Profile::gaussian(p);
  if (family == "exponential") return Profile::exponential(p);
  if (family == "cauchy") return Profile::cauchy(p);
  if (family == "bump") return Profile::bump(p);
  if (fs::exists(family)) return read_tabulated_profile(family);
  throw ConfigError("unknown profile '" + family + "' (gaussian, exponential, cauchy, bump, or a CSV file)");
}

void write_field(const GridField& f, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (double v : f.data()) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!out) throw ConfigError("write failed: " + path.string());
  write_text(sidecar_of(path), dump_json({{"n", f.dim()}, {"L", f.half_width()}, {"M", f.points()}}));
}

GridField read_field(const fs::path& path) {
  const json meta = read_json(sidecar_of(path));
  if (!meta.contains("n") || !meta.contains("L") || !meta.contains("M")) {
    throw ConfigError(sidecar_of(path).string() + ": sidecar needs n, L, M");
  }
  GridField f(meta["n"].get<int>(), meta["L"].get<double>(), meta["M"].get<int>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  for (auto& v : f.data()) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
      throw ConfigError(path.string() + ": fewer samples than M^n");
    }
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    v = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ConfigError(path.string() + ": more samples than M^n");
  return f;
}

std::string field_csv(const GridField& f) {
  const int n = f.dim();
  if (n > 2) throw DomainError("field_csv: n <= 2");
  std::ostringstream os;
  os << (n == 1 ? "x,value\n" : "x1,x2,value\n");
  char buf[32];
  std::vector<double> x(n);
  for (long i = 0; i < f.size(); ++i) {
    f.node(i, x);
    for (int a = 0; a < n; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", x[a]);
      os << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", f[i]);
    os << buf << '\n';
  }
  return os.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace fracradon
