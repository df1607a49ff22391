// fracradon: command-line front end.
// Exit codes: 0 ok, 1 a verdict failed, 2 usage or configuration error,
// 3 numerical budget failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracradon/acceptance.hpp"
#include "fracradon/body.hpp"
#include "fracradon/construct.hpp"
#include "fracradon/density.hpp"
#include "fracradon/error.hpp"
#include "fracradon/field.hpp"
#include "fracradon/io.hpp"
#include "fracradon/kernels.hpp"
#include "fracradon/profile.hpp"
#include "fracradon/radon.hpp"
#include "fracradon/report.hpp"
#include "fracradon/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracradon;

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Common {
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out,-o", c.out, "Write the result here instead of stdout");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--seed", c.seed, "Master seed");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text(c.out, text);
  }
}

StarBody resolve_body(const std::string& spec, int n) {
  if (fs::exists(spec)) {
    auto K = load_body(spec);
    if (n > 0 && K.dim() != n) throw ConfigError("body spec dimension differs from --n");
    return K;
  }
  return named_body(spec, n);
}

Density resolve_density(const std::string& spec, int n) {
  if (fs::exists(spec)) return load_density(spec, n);
  return named_density(spec, n);
}

Direction parse_direction(const std::vector<double>& xi, int n) {
  if (xi.empty()) return Direction::axis(n, 0);
  if (static_cast<int>(xi.size()) != n) throw ConfigError("--xi needs n components");
  return Direction(xi);
}

RadonMethod parse_method(const std::string& s) {
  if (s == "auto") return RadonMethod::automatic;
  if (s == "quadrature") return RadonMethod::quadrature;
  if (s == "mc") return RadonMethod::monte_carlo;
  throw ConfigError("unknown method " + s);
}

LaplacianMode parse_mode(const std::string& s) {
  if (s == "auto") return LaplacianMode::automatic;
  if (s == "periodic") return LaplacianMode::periodic;
  if (s == "free_space") return LaplacianMode::free_space;
  throw ConfigError("unknown mode " + s);
}

std::string rows_csv(const json& rows) {
  if (rows.empty()) return "";
  std::ostringstream os;
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& v = r[keys[i]];
      os << (i ? "," : "");
      if (v.is_string()) {
        os << v.get<std::string>();
      } else if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + x.dump();
        os << s;
      } else if (!v.is_null()) {
        os << v.dump();
      }
    }
    os << '\n';
  }
  return os.str();
}

int worst_exit(const std::vector<VerificationReport>& reps) {
  for (const auto& r : reps)
    if (r.verdict == Verdict::fails) return kFails;
  return kOk;
}

json reports_json(const std::vector<VerificationReport>& reps) {
  auto arr = json::array();
  for (const auto& r : reps) arr.push_back(r.to_json());
  return arr;
}

void emit_reports(const Common& c, const json& config, const std::vector<VerificationReport>& reps) {
  if (c.format == "csv") {
    auto rows = json::array();
    for (const auto& r : reps) {
      rows.push_back({{"statement", r.statement}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin},
                      {"budget", r.budgets.combined()}, {"verdict", to_string(r.verdict)}, {"seed", r.seed}});
    }
    emit(c, rows_csv(rows));
    return;
  }
  emit(c, dump_json({{"config", config}, {"reports", reports_json(reps)}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Radon toolkit: sections, fractional derivatives, Laplacians and inequality checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with option defaults; flags take precedence");
  std::string threads_flag;
  app.add_option("--threads", threads_flag, "Worker threads (overrides FRACRADON_THREADS)");

  // fracderiv
  Common fd_c;
  std::string fd_profile = "gaussian";
  double fd_param = 1.0;
  std::vector<double> fd_q;
  int fd_m = 0;
  std::string fd_pathway = "generic";
  bool fd_theorem = false;
  auto* fd = app.add_subcommand("fracderiv", "Fractional derivative of order q at 0 of a profile");
  fd->add_option("--profile", fd_profile, "gaussian, exponential, cauchy, bump, or a t,phi CSV file");
  fd->add_option("--param", fd_param, "Family parameter (sigma, rate, gamma or T)");
  fd->add_option("--q", fd_q, "Orders")->required();
  fd->add_option("--m", fd_m, "Regularization order (0 selects floor(q)+2)");
  fd->add_option("--pathway", fd_pathway, "generic or odd_limit")->check(CLI::IsMember({"generic", "odd_limit", "automatic"}));
  fd->add_flag("--theorem", fd_theorem, "Divide by cos(pi q/2) (section-of-Laplacian normalization)");
  add_common(fd, fd_c);

  // radon
  Common rd_c;
  std::string rd_density = "gaussian";
  int rd_n = 2;
  std::vector<double> rd_xi, rd_t{0.0};
  std::optional<double> rd_q;
  std::string rd_method = "auto";
  long rd_samples = 400000;
  auto* rd = app.add_subcommand("radon", "Hyperplane integrals Rf(xi, t), or the fractional derivative at t = 0");
  rd->add_option("--density", rd_density, "gaussian, normal, bump, or a density spec file");
  rd->add_option("--n", rd_n, "Dimension")->check(CLI::Range(1, 16));
  rd->add_option("--xi", rd_xi, "Direction components (default e_1)");
  rd->add_option("--t", rd_t, "Offsets");
  rd->add_option("--q", rd_q, "Report the fractional derivative of order q instead");
  rd->add_option("--method", rd_method, "auto, quadrature or mc")->check(CLI::IsMember({"auto", "quadrature", "mc"}));
  rd->add_option("--samples", rd_samples, "Monte Carlo samples");
  add_common(rd, rd_c);

  // laplacian
  Common lp_c;
  std::string lp_density = "gaussian";
  int lp_n = 2;
  double lp_q = -1.0, lp_L = 8.0;
  int lp_M = 64;
  std::string lp_mode = "auto", lp_field, lp_csv;
  bool lp_section = false;
  std::vector<double> lp_xi;
  auto* lp = app.add_subcommand("laplacian", "Fractional Laplacian of order q on a grid");
  lp->add_option("--density", lp_density, "gaussian, normal, bump, or a density spec file");
  lp->add_option("--n", lp_n, "Dimension")->check(CLI::Range(1, 4));
  lp->add_option("--q", lp_q, "Order (negative for Riesz potentials)");
  lp->add_option("--L", lp_L, "Half width of the box");
  lp->add_option("--M", lp_M, "Points per axis (even)");
  lp->add_option("--mode", lp_mode, "auto, periodic or free_space")->check(CLI::IsMember({"auto", "periodic", "free_space"}));
  lp->add_option("--field", lp_field, "Write the result as a binary field with a JSON sidecar");
  lp->add_option("--csv", lp_csv, "Write the result as CSV (n <= 2)");
  lp->add_flag("--section", lp_section, "Also integrate the section xi^perp of the result (Richardson ladder)");
  lp->add_option("--xi", lp_xi, "Section direction (default e_1)");
  add_common(lp, lp_c);

  // verify
  Common vf_c;
  std::string vf_statement, vf_body = "ball", vf_density = "gaussian", vf_pathway = "automatic";
  int vf_n = 3, vf_mesh = 0;
  std::vector<double> vf_q{0.5};
  std::optional<double> vf_dovr;
  bool vf_normalize = false, vf_explore = false;
  double vf_tol = 1e-6;
  auto* vf = app.add_subcommand("verify", "Check one statement: theorem1, theorem3, eq7, implied_dovr, riesz_pair, matrix");
  vf->add_option("statement", vf_statement, "Statement")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem3", "eq7", "implied_dovr", "riesz_pair", "matrix"}));
  vf->add_option("--body", vf_body, "ball, cube, l1_ball (volume one) or a body spec file");
  vf->add_option("--n", vf_n, "Dimension")->check(CLI::Range(2, 4));
  vf->add_option("--q", vf_q, "Orders");
  vf->add_option("--density", vf_density, "gaussian, normal, bump, or a density spec file");
  vf->add_option("--dovr", vf_dovr, "Known upper bound on d_ovr (default: the bound for the body family)");
  vf->add_option("--pathway", vf_pathway, "automatic, generic or odd_limit")
      ->check(CLI::IsMember({"automatic", "generic", "odd_limit"}));
  vf->add_option("--mesh", vf_mesh, "Direction mesh size (0: default)");
  vf->add_flag("--normalize", vf_normalize, "Rescale f so that int_K f = 1 (implied for eq7)");
  vf->add_flag("--explore", vf_explore, "Evaluate q in [n-1, n) without a verdict");
  vf->add_option("--tol", vf_tol, "Tolerance for riesz_pair");
  add_common(vf, vf_c);

  // construct
  Common cs_c;
  std::string cs_body = "scaled_ball", cs_density, cs_dump;
  int cs_n = 3;
  std::vector<double> cs_q{0.5};
  double cs_L = 8.0;
  int cs_M = 64;
  long cs_samples = 1000000;
  bool cs_certificate = false, cs_convolution = false;
  auto* cs = app.add_subcommand("construct", "Build D and g from K and f, with normalization and certificate reports");
  cs->add_option("--body", cs_body, "scaled_ball, scaled_cube (surrogates) or a body spec file");
  cs->add_option("--density", cs_density, "Density spec file (default: the surrogate's Gaussian)");
  cs->add_option("--n", cs_n, "Dimension")->check(CLI::Range(2, 4));
  cs->add_option("--q", cs_q, "Orders, 0 <= q < n - 1");
  cs->add_option("--L", cs_L, "Grid half width");
  cs->add_option("--M", cs_M, "Grid points per axis");
  cs->add_option("--samples", cs_samples, "Monte Carlo samples");
  cs->add_flag("--certificate", cs_certificate, "Also check the lower bound for int_{2K} h");
  cs->add_flag("--convolution", cs_convolution, "Compute h by Riesz convolution instead of the spectral split");
  cs->add_option("--dump", cs_dump, "Prefix for h fields (<prefix>_q<q>.bin with sidecar)");
  add_common(cs, cs_c);

  // sweep
  Common sw_c;
  sw_c.format = "csv";
  SweepConfig sw_cfg;
  std::string sw_pathway = "automatic";
  int sw_mesh = 0;
  auto* sw = app.add_subcommand("sweep", "q-sweep of max Radq f, c_measured and the implied d_ovr bound");
  sw->add_option("--dims", sw_cfg.dims, "Dimensions");
  sw->add_option("--q", sw_cfg.qs, "Orders");
  sw->add_option("--body", sw_cfg.body, "ball or cube (volume one)");
  sw->add_option("--density", sw_cfg.density, "gaussian or bump");
  sw->add_option("--pathway", sw_pathway, "automatic or generic")->check(CLI::IsMember({"automatic", "generic"}));
  sw->add_option("--mesh", sw_mesh, "Direction mesh size (0: default)");
  add_common(sw, sw_c);

  // selftest
  Common st_c;
  std::vector<int> st_only;
  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--only", st_only, "Run these criteria only")->check(CLI::Range(1, kCriterionCount));
  add_common(st, st_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::string threads = threads_flag;
    if (threads.empty()) {
      if (const char* env = std::getenv("FRACRADON_THREADS")) threads = env;
    }
    if (!threads.empty()) {
      char* end = nullptr;
      const long t = std::strtol(threads.c_str(), &end, 10);
      if (*end != '\0' || t < 1 || t > 1024) throw ConfigError("thread count must be a positive integer: " + threads);
      set_worker_threads(static_cast<int>(t));
    }

    if (*fd) {
      const Profile phi = named_profile(fd_profile, fd_param);
      const Pathway pw = parse_pathway(fd_pathway);
      auto rows = json::array();
      for (double q : fd_q) {
        const FracOrder fo(q);
        double v;
        std::string method;
        const bool odd = pw == Pathway::odd_limit || (pw == Pathway::automatic && fo.is_odd_integer());
        if (odd) {
          if (!fo.is_odd_integer()) throw DomainError("odd_limit pathway: q must be an odd integer");
          v = frac_derivative_odd(phi, fo.odd_k());
          method = "odd_limit";
        } else if (fd_theorem) {
          v = frac_derivative_theorem(phi, q);
          method = "continuation/cos";
        } else {
          v = frac_derivative_at_zero(phi, q, fd_m);
          method = "continuation";
        }
        rows.push_back({{"profile", phi.family()}, {"q", q}, {"value", v}, {"method", method},
                        {"m", fd_m > 0 ? fd_m : static_cast<int>(std::floor(q)) + 2}});
      }
      if (fd_c.format == "csv") {
        emit(fd_c, rows_csv(rows));
      } else {
        emit(fd_c, dump_json({{"config", {{"command", "fracderiv"}, {"profile", fd_profile}, {"param", fd_param},
                                          {"pathway", fd_pathway}, {"theorem", fd_theorem}}},
                              {"rows", rows}}));
      }
      return kOk;
    }

    if (*rd) {
      const Density f = resolve_density(rd_density, rd_n);
      const Direction xi = parse_direction(rd_xi, rd_n);
      RadonOptions ro;
      ro.method = parse_method(rd_method);
      ro.samples = rd_samples;
      ro.seed = rd_c.seed;
      auto rows = json::array();
      if (rd_q) {
        const double v = radon_frac_deriv_theorem(f, xi, *rd_q, ro);
        rows.push_back({{"xi", xi.components()}, {"q", *rd_q}, {"value", v}, {"method", "profile_continuation"},
                        {"budgets", {{"quadrature", 1e-7 * std::abs(v)}}}});
      } else {
        for (double t : rd_t) {
          const auto r = radon_value(f, xi, t, ro);
          rows.push_back({{"xi", xi.components()}, {"t", t}, {"value", r.value}, {"method", r.method},
                          {"budgets", {{"quadrature", r.quad_error}, {"mc_stderr", r.std_error}}}});
        }
      }
      if (rd_c.format == "csv") {
        for (auto& r : rows) r.erase("budgets");
        emit(rd_c, rows_csv(rows));
      } else {
        emit(rd_c, dump_json({{"config", {{"command", "radon"}, {"density", rd_density}, {"n", rd_n},
                                          {"method", rd_method}, {"seed", rd_c.seed}, {"samples", rd_samples}}},
                              {"rows", rows}}));
      }
      return kOk;
    }

    if (*lp) {
      const Density f = resolve_density(lp_density, lp_n);
      const GridField g = sample(f, lp_L, lp_M);
      LaplacianInfo info;
      const GridField h = fractional_laplacian(g, lp_q, parse_mode(lp_mode), &info);
      if (!lp_field.empty()) write_field(h, lp_field);
      if (!lp_csv.empty()) write_text(lp_csv, field_csv(h));
      json out = {{"config", {{"command", "laplacian"}, {"density", lp_density}, {"n", lp_n}, {"q", lp_q},
                              {"L", lp_L}, {"M", lp_M}, {"mode", lp_mode}}},
                  {"result", {{"mode", info.mode}, {"imag_residue", info.imag_residue},
                              {"grid_integral", grid_integral(h)}, {"section_e1", axis_section(h)}}}};
      if (lp_section) {
        SectionGrid sg;
        sg.M = lp_M;
        sg.mode = parse_mode(lp_mode);
        const Direction xi = parse_direction(lp_xi, lp_n);
        const auto s = radon_frac_deriv_via_laplacian(f, xi, lp_q, sg);
        out["section"] = {{"xi", xi.components()}, {"value", s.section}, {"literal", s.literal},
                          {"coarse", s.coarse}, {"fine", s.fine}, {"truncation", s.truncation}};
      }
      emit(lp_c, dump_json(out));
      return kOk;
    }

    if (*vf) {
      VerifyOptions vo;
      vo.pathway = parse_pathway(vf_pathway);
      vo.search.mesh = vf_mesh;
      vo.search.seed = vf_c.seed;
      vo.allow_out_of_range = vf_explore;
      json config = {{"command", "verify"}, {"statement", vf_statement}, {"body", vf_body}, {"n", vf_n},
                     {"q", vf_q}, {"density", vf_density}, {"pathway", vf_pathway}, {"mesh", vf_mesh},
                     {"seed", vf_c.seed}, {"normalize", vf_normalize || vf_statement == "eq7"}};
      std::vector<VerificationReport> reps;
      if (vf_statement == "matrix") {
        for (const auto& cell : default_matrix(vo)) {
          if (cell.report) reps.push_back(*cell.report);
        }
        emit_reports(vf_c, config, reps);
        return worst_exit(reps);
      }
      if (vf_statement == "riesz_pair") {
        for (double q : vf_q) reps.push_back(verify_riesz_pair(vf_n, q, vf_tol));
        emit_reports(vf_c, config, reps);
        return worst_exit(reps);
      }
      const StarBody K = resolve_body(vf_body, vf_n);
      Density f = resolve_density(vf_density, K.dim());
      if (vf_normalize || vf_statement == "eq7") {
        const auto m = integrate_over_body(K, f.function(), f.cutoff_radius(), 1e-10);
        f = Density::scaled(f, 1.0, 1.0 / m.value);
      }
      double dovr = 1.0;
      if (vf_dovr) {
        dovr = *vf_dovr;
        vo.dovr_provenance = "caller supplied";
      } else if (auto b = known_dovr_bound(K)) {
        dovr = *b;
      } else if (vf_statement == "theorem1" || vf_statement == "theorem3") {
        throw ConfigError("no known d_ovr bound for this body; pass --dovr");
      }
      config["dovr"] = dovr;
      if (vf_statement == "theorem1") {
        reps.push_back(verify_theorem1(K, f, dovr, vo));
      } else if (vf_statement == "theorem3") {
        for (double q : vf_q) reps.push_back(verify_theorem3(K, f, q, dovr, vo));
      } else if (vf_statement == "eq7") {
        for (double q : vf_q) reps.push_back(verify_eq7(K, f, q, vo));
      } else {
        auto rows = json::array();
        for (double q : vf_q) {
          const auto d = implied_dovr_lower_bound(K, f, q, vo);
          rows.push_back({{"q", q}, {"implied_dovr", d.value}, {"int_K_f", d.int_K_f},
                          {"max_frac_deriv", d.max_frac_deriv}, {"factor", d.factor},
                          {"argmax", d.argmax.components()}, {"pathway", d.pathway}});
        }
        if (vf_c.format == "csv") {
          emit(vf_c, rows_csv(rows));
        } else {
          emit(vf_c, dump_json({{"config", config}, {"rows", rows}}));
        }
        return kOk;
      }
      emit_reports(vf_c, config, reps);
      return worst_exit(reps);
    }

    if (*cs) {
      std::optional<Surrogate> sur;
      if (cs_body == "scaled_ball" || cs_body == "scaled_cube") sur = surrogate_example(cs_n, cs_body);
      const StarBody K = sur ? sur->K : resolve_body(cs_body, cs_n);
      if (!sur && cs_density.empty()) throw ConfigError("--density is required with a custom body");
      const Density f = cs_density.empty() ? sur->f : resolve_density(cs_density, K.dim());
      ConstructionOptions co;
      co.grid = {cs_L, cs_M, cs_convolution};
      co.mc_samples = cs_samples;
      co.seed = cs_c.seed;
      std::vector<VerificationReport> reps;
      auto extra = json::array();
      for (double q : cs_q) {
        const auto ex = build_example(K, f, q, co);
        reps.push_back(ex.normalization_report());
        if (cs_certificate && q > 0.0) reps.push_back(lower_bound_certificate(K, f, q, co));
        if (q > 0.0) reps.push_back(verify_eq7(ex));
        json row = {{"q", q}, {"a", ex.a}, {"Z", ex.Z}, {"volume_D", ex.volume_D}, {"mass_D", ex.mass_D},
                    {"clamp_mass", ex.h.clamp_mass}, {"dnq", q > 0.0 ? example_constant_dnq(K.dim(), q) : 1.0}};
        if (q < K.dim() - 1.0) {
          const auto d = implied_dovr_lower_bound(ex);
          row["implied_dovr"] = d.value;
          row["reference_n_power"] = std::pow(K.dim(), 1.0 / (2.0 * (q + 1.0)));
        }
        if (!cs_dump.empty()) {
          char name[64];
          std::snprintf(name, sizeof name, "_q%g.bin", q);
          write_field(ex.h.field, cs_dump + name);
          row["h_field"] = cs_dump + name;
        }
        extra.push_back(row);
      }
      json config = {{"command", "construct"}, {"body", cs_body}, {"density", cs_density.empty() ? "surrogate" : cs_density},
                     {"n", K.dim()}, {"q", cs_q}, {"L", cs_L}, {"M", cs_M}, {"samples", cs_samples},
                     {"seed", cs_c.seed}, {"method", cs_convolution ? "riesz_convolution" : "spectral"}};
      if (cs_c.format == "csv") {
        emit_reports(cs_c, config, reps);
      } else {
        emit(cs_c, dump_json({{"config", config}, {"reports", reports_json(reps)}, {"construction", extra}}));
      }
      return worst_exit(reps);
    }

    if (*sw) {
      sw_cfg.seed = sw_c.seed;
      sw_cfg.verify.pathway = parse_pathway(sw_pathway);
      sw_cfg.verify.search.mesh = sw_mesh;
      const auto rows = sweep_table(sw_cfg);
      if (sw_c.format == "csv") {
        emit(sw_c, sweep_csv(rows));
      } else {
        emit(sw_c, dump_json({{"config", {{"command", "sweep"}, {"dims", sw_cfg.dims}, {"q", sw_cfg.qs},
                                          {"body", sw_cfg.body}, {"density", sw_cfg.density},
                                          {"seed", sw_c.seed}, {"pathway", sw_pathway}}},
                              {"rows", sweep_json(rows)}}));
      }
      return kOk;
    }

    if (*st) {
      std::vector<CriterionResult> results;
      auto print = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
      if (st_only.empty()) {
        results = run_acceptance(print);
      } else {
        for (int id : st_only) {
          results.push_back(run_criterion(id));
          print(results.back());
        }
      }
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      if (!st_c.out.empty()) write_text(st_c.out, dump_json({{"criteria", results_json(results)}, {"pass", ok}}));
      return ok ? kOk : kFails;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kBudget;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
