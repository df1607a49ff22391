#include "fracradon/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/sphere.hpp"

namespace fracradon {

std::string to_string(Pathway p) {
  switch (p) {
    case Pathway::automatic: return "automatic";
    case Pathway::generic: return "generic";
    case Pathway::odd_limit: return "odd_limit";
  }
  return "automatic";
}

Pathway parse_pathway(const std::string& s) {
  if (s == "automatic" || s == "auto") return Pathway::automatic;
  if (s == "generic") return Pathway::generic;
  if (s == "odd_limit" || s == "odd") return Pathway::odd_limit;
  throw DomainError("unknown pathway '" + s + "' (automatic, generic, odd_limit)");
}

std::optional<double> known_dovr_bound(const StarBody& K) {
  switch (K.family()) {
    case BodyFamily::ball:
    case BodyFamily::ellipsoid: return 1.0;
    case BodyFamily::cube: return std::numbers::e;
    default: return std::nullopt;
  }
}

std::string dovr_provenance(const StarBody& K) {
  switch (K.family()) {
    case BodyFamily::ball:
    case BodyFamily::ellipsoid: return "ellipsoid: d_ovr = 1";
    case BodyFamily::cube: return "unconditional body: d_ovr <= e";
    default: return "caller supplied";
  }
}

namespace {

double body_volume(const StarBody& K) {
  if (auto v = K.exact_volume()) return *v;
  return volume(K).value;
}

Estimate body_mass(const StarBody& K, const Density& f, double rel_tol) {
  return integrate_over_body(K, f.function(), f.cutoff_radius(), rel_tol);
}

struct Resolved {
  Pathway pathway;
  int k = 0;
};

// Generic q at an odd integer is an error; the odd pathway needs one.
Resolved resolve(double q, Pathway requested) {
  const FracOrder fo(q);
  switch (requested) {
    case Pathway::generic:
      if (fo.near_odd_integer(1e-6)) {
        throw OddOrderError("generic pathway: q is an odd integer; use the odd_limit pathway");
      }
      return {Pathway::generic, 0};
    case Pathway::odd_limit:
      if (!fo.is_odd_integer()) throw DomainError("odd_limit pathway: q must be an odd integer");
      return {Pathway::odd_limit, fo.odd_k()};
    case Pathway::automatic:
      if (fo.is_odd_integer()) return {Pathway::odd_limit, fo.odd_k()};
      return resolve(q, Pathway::generic);
  }
  return {Pathway::generic, 0};
}

double front_factor(int n, double q, const Resolved& r, double vol, double dovr) {
  return r.pathway == Pathway::odd_limit ? theorem3_factor_odd(n, r.k, vol, dovr)
                                         : theorem3_factor(n, q, vol, dovr);
}

nlohmann::json direction_json(const Direction& d) { return d.components(); }

void check_dims(const StarBody& K, const Density& f, const char* who) {
  if (K.dim() != f.dim()) throw DomainError(std::string(who) + ": dimension mismatch");
  if (K.dim() < 2) throw DomainError(std::string(who) + ": requires n >= 2");
}

}  // namespace

StarBody volume_one(const StarBody& K) {
  return dilate(K, std::pow(body_volume(K), -1.0 / K.dim()));
}

VerificationReport verify_theorem1(const StarBody& K, const Density& f, double dovr_bound,
                                   const VerifyOptions& opt) {
  check_dims(K, f, "verify_theorem1");
  if (!K.symmetric()) throw DomainError("verify_theorem1: K must be origin-symmetric");
  if (!f.even() || !f.nonnegative()) throw DomainError("verify_theorem1: f must be even and nonnegative");
  if (!(dovr_bound >= 1.0)) throw DomainError("verify_theorem1: dovr bound must be >= 1");
  const int n = K.dim();
  const double vol = body_volume(K);
  const auto mass = body_mass(K, f, opt.rel_tol);
  const Density fk = Density::restrict_to(f, K);
  RadonOptions ro = opt.radon;
  ro.method = RadonMethod::quadrature;
  auto section = [&](const Direction& xi) { return radon(fk, xi, 0.0, ro); };
  const auto best = [&]() -> DirectionMax {
    if (K.family() == BodyFamily::ball && f.isotropic()) {
      const auto e1 = Direction::axis(n, 0);
      const double v = section(e1);
      return {e1, v, v, v, 1, {}};
    }
    return max_over_directions(n, section, opt.search);
  }();
  const double cn = slicing_constant_cn(n);
  const double factor = dovr_bound * (n / (n - 1.0)) * cn * std::pow(vol, 1.0 / n);

  VerificationReport rep;
  rep.statement = "theorem1";
  rep.params = {{"n", n},          {"body", K.name()}, {"density", f.family()},
                {"dovr", dovr_bound},
                {"dovr_provenance", opt.dovr_provenance.empty() ? dovr_provenance(K)
                                                                : opt.dovr_provenance},
                {"mesh", best.mesh_size}};
  rep.lhs = mass.value;
  rep.rhs = factor * best.value;
  rep.relation = Relation::le;
  rep.budgets.quadrature = mass.quad_error + opt.quad_budget * (std::abs(rep.lhs) + std::abs(rep.rhs));
  rep.seed = opt.search.seed;
  rep.method = "polar_quadrature+direction_search";
  rep.finalize();
  rep.extra = {{"int_K_f", mass.value},   {"max_section", best.value},
               {"argmax", direction_json(best.best)}, {"volume_K", vol},
               {"c_n", cn},                {"factor", factor}};
  rep.notes.push_back("the direction maximum is a lower bound, so the check is conservative");
  if (rep.verdict == Verdict::fails) {
    rep.notes.push_back("a failure here is a numerical defect, not a counterexample");
  }
  return rep;
}

VerificationReport verify_theorem3(const StarBody& K, const Density& f, double q,
                                   double dovr_bound, const VerifyOptions& opt) {
  check_dims(K, f, "verify_theorem3");
  const int n = K.dim();
  if (!K.symmetric()) throw DomainError("verify_theorem3: K must be origin-symmetric");
  if (!f.even() || !f.nonnegative()) throw DomainError("verify_theorem3: f must be even and nonnegative");
  if (!(dovr_bound >= 1.0)) throw DomainError("verify_theorem3: dovr bound must be >= 1");
  const bool in_range = q > -1.0 && q < n - 1.0;
  const bool exploring = !in_range && opt.allow_out_of_range && q > -1.0 && q < n;
  if (!in_range && !exploring) {
    throw DomainError("verify_theorem3: requires -1 < q < n - 1");
  }
  const Resolved r = resolve(q, opt.pathway);
  const double vol = body_volume(K);
  const auto mass = body_mass(K, f, opt.rel_tol);
  const auto best = max_over_directions(f, q, opt.search, true, opt.radon);

  VerificationReport rep;
  rep.statement = "theorem3";
  rep.params = {{"n", n},
                {"q", q},
                {"body", K.name()},
                {"density", f.family()},
                {"dovr", dovr_bound},
                {"dovr_provenance", opt.dovr_provenance.empty() ? dovr_provenance(K)
                                                                : opt.dovr_provenance},
                {"pathway", to_string(r.pathway)},
                {"mesh", best.mesh_size}};
  rep.lhs = mass.value;
  rep.relation = Relation::le;
  rep.seed = opt.search.seed;
  rep.method = "polar_quadrature+profile_continuation";
  if (exploring) {
    // The front factor changes sign at q = n - 1; nothing is claimed here.
    rep.rhs = std::numeric_limits<double>::quiet_NaN();
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back("out_of_theorem_range: q >= n - 1, reported for exploration only");
    rep.extra = {{"int_K_f", mass.value}, {"max_frac_deriv", best.value}};
    return rep;
  }
  const double factor = front_factor(n, q, r, vol, dovr_bound);
  rep.rhs = factor * best.value;
  rep.budgets.quadrature = mass.quad_error + opt.quad_budget * (std::abs(rep.lhs) + std::abs(rep.rhs));
  rep.finalize();
  rep.extra = {{"int_K_f", mass.value},          {"max_frac_deriv", best.value},
               {"argmax", direction_json(best.best)}, {"volume_K", vol},
               {"factor", factor}};
  if (std::abs(q) < kIntegerWindow) {
    const double t1 = (n / (n - 1.0)) * slicing_constant_cn(n) * std::pow(vol, 1.0 / n) * dovr_bound;
    rep.extra["theorem1_factor"] = t1;
    rep.notes.push_back("q = 0: front factor n/(n-1) Vol^{1/n} dominates the slicing factor since c_n < 1");
  }
  if (r.pathway == Pathway::odd_limit) {
    rep.notes.push_back("odd integer q: the renormalized odd-order quantity replaces the derivative");
  }
  rep.notes.push_back("supp f inside K is not required");
  if (rep.verdict == Verdict::fails) {
    rep.notes.push_back("a failure here is a numerical defect, not a counterexample");
  }
  return rep;
}

namespace {

VerificationReport eq7_report(int n, double q, double max_fd, const Direction& argmax,
                              const std::string& pathway, double rel_budget) {
  if (!(max_fd > 0.0)) {
    throw BudgetError("verify_eq7: max fractional derivative is not positive");
  }
  const double c = n / (q + 1.0) * std::pow(max_fd, 2.0 / (q + 1.0));
  VerificationReport rep;
  rep.statement = "eq7";
  rep.params = {{"n", n}, {"q", q}, {"pathway", pathway}};
  rep.lhs = c;
  rep.rhs = 0.0;
  rep.relation = Relation::ge;
  // d c / c = (2/(q+1)) d max / max.
  rep.budgets.quadrature = rel_budget * 2.0 / (q + 1.0) * c;
  rep.finalize();
  rep.extra = {{"c_measured", c},
               {"max_frac_deriv", max_fd},
               {"argmax", direction_json(argmax)},
               {"lower_bound_at_c", eq7_lower_bound(n, q, c)}};
  rep.notes.push_back("c_measured is the largest constant for which the bound holds");
  return rep;
}

void require_probability(double vol, double mass, const char* who) {
  if (std::abs(vol - 1.0) > 1e-3) {
    throw DomainError(std::string(who) + ": Vol(K) must be 1 within 1e-3");
  }
  if (std::abs(mass - 1.0) > 1e-3) {
    throw DomainError(std::string(who) + ": int_K f must be 1 within 1e-3");
  }
}

}  // namespace

VerificationReport verify_eq7(const StarBody& K, const Density& f, double q,
                              const VerifyOptions& opt) {
  check_dims(K, f, "verify_eq7");
  if (!(q >= 0.0)) throw DomainError("verify_eq7: requires q >= 0");
  const Resolved r = resolve(q, opt.pathway);
  const double vol = body_volume(K);
  const auto mass = body_mass(K, f, opt.rel_tol);
  require_probability(vol, mass.value, "verify_eq7");
  const auto best = max_over_directions(f, q, opt.search, true, opt.radon);
  auto rep = eq7_report(K.dim(), q, best.value, best.best, to_string(r.pathway), opt.quad_budget);
  rep.params["body"] = K.name();
  rep.params["density"] = f.family();
  rep.seed = opt.search.seed;
  rep.method = "profile_continuation";
  rep.extra["int_K_f"] = mass.value;
  rep.extra["volume_K"] = vol;
  return rep;
}

VerificationReport verify_eq7(const ConstructionResult& c, const VerifyOptions& opt) {
  const int n = c.K.dim();
  require_probability(c.volume_D, c.mass_D, "verify_eq7");
  auto best = max_over_directions(n, [&](const Direction& xi) { return c.radq_g(xi); }, opt.search);
  auto rep = eq7_report(n, c.q, best.value, best.best, "construction", 1e-3);
  rep.params["body"] = "D(" + c.K.name() + ")";
  rep.params["density"] = "g(" + c.f.family() + ")";
  rep.seed = opt.search.seed;
  rep.method = "construction_identity";
  rep.extra["volume_D"] = c.volume_D;
  rep.extra["mass_D"] = c.mass_D;
  rep.notes.push_back("Radq g = a^{q-(n-1)} Rf(xi, 0) / Z; budget covers the normalization tolerance");
  return rep;
}

ImpliedDovr implied_dovr_lower_bound(const StarBody& K, const Density& f, double q,
                                     const VerifyOptions& opt) {
  check_dims(K, f, "implied_dovr_lower_bound");
  const int n = K.dim();
  if (!(q > -1.0 && q < n - 1.0)) {
    throw DomainError("implied_dovr_lower_bound: requires -1 < q < n - 1");
  }
  const Resolved r = resolve(q, opt.pathway);
  const double vol = body_volume(K);
  const auto mass = body_mass(K, f, opt.rel_tol);
  const auto best = max_over_directions(f, q, opt.search, true, opt.radon);
  const double factor = front_factor(n, q, r, vol, 1.0);
  if (!(best.value > 0.0)) throw BudgetError("implied_dovr_lower_bound: non-positive maximum");
  ImpliedDovr out{std::pow(mass.value / (factor * best.value), 1.0 / (q + 1.0)),
                  mass.value, best.value, factor, best.best, to_string(r.pathway)};
  return out;
}

ImpliedDovr implied_dovr_lower_bound(const ConstructionResult& c, const VerifyOptions& opt) {
  const int n = c.K.dim();
  const double q = c.q;
  const Resolved r = resolve(q, opt.pathway);
  auto best = max_over_directions(n, [&](const Direction& xi) { return c.radq_g(xi); }, opt.search);
  const double factor = front_factor(n, q, r, c.volume_D, 1.0);
  return {std::pow(c.mass_D / (factor * best.value), 1.0 / (q + 1.0)), c.mass_D, best.value,
          factor, best.best, to_string(r.pathway)};
}

namespace {

StarBody default_body(const std::string& family, int n) {
  if (family == "ball") return volume_one(StarBody::ball(n));
  if (family == "cube") return volume_one(StarBody::cube(n));
  throw DomainError("sweep: unknown body family '" + family + "' (ball, cube)");
}

Density default_density(const std::string& family, int n) {
  if (family == "gaussian") return Density::gaussian(n);
  if (family == "bump") return Density::bump(n);
  throw DomainError("sweep: unknown density family '" + family + "' (gaussian, bump)");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<SweepRow> sweep_table(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (int n : cfg.dims) {
    const StarBody K = cfg.make_body ? cfg.make_body(n) : default_body(cfg.body, n);
    Density f0 = cfg.make_density ? cfg.make_density(n) : default_density(cfg.density, n);
    const auto mass0 = body_mass(K, f0, cfg.verify.rel_tol);
    // Rescale so that f is a probability density on K.
    const Density f = Density::scaled(f0, 1.0, 1.0 / mass0.value);
    const double vol = body_volume(K);
    const double mass = mass0.value / mass0.value;
    for (double q : cfg.qs) {
      SweepRow row;
      row.n = n;
      row.q = q;
      row.seed = derive_seed(cfg.seed, cell++);
      VerifyOptions vo = cfg.verify;
      vo.search.seed = row.seed;
      const Resolved r = resolve(q, vo.pathway);
      row.pathway = to_string(r.pathway);
      const auto best = max_over_directions(f, q, vo.search, true, vo.radon);
      row.max_frac_deriv = best.value;
      row.c_measured = n / (q + 1.0) * std::pow(best.value, 2.0 / (q + 1.0));
      row.int_K_f = mass;
      row.budget = vo.quad_budget * std::abs(best.value) + mass0.quad_error / mass0.value;
      if (q > -1.0 && q < n - 1.0) {
        const double factor = front_factor(n, q, r, vol, 1.0);
        row.implied_dovr = std::pow(mass / (factor * best.value), 1.0 / (q + 1.0));
        row.status = "ok";
      } else {
        row.status = "out_of_theorem_range";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "n,q,pathway,max_frac_deriv,c_measured,implied_dovr,int_K_f,budget,seed,status\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt(r.q) << ',' << r.pathway << ',' << fmt(r.max_frac_deriv) << ','
       << fmt(r.c_measured) << ',' << (r.implied_dovr ? fmt(*r.implied_dovr) : "") << ','
       << fmt(r.int_K_f) << ',' << fmt(r.budget) << ',' << r.seed << ',' << r.status << '\n';
  }
  return os.str();
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n", r.n},
                   {"q", r.q},
                   {"pathway", r.pathway},
                   {"max_frac_deriv", r.max_frac_deriv},
                   {"c_measured", r.c_measured},
                   {"implied_dovr", r.implied_dovr ? nlohmann::json(*r.implied_dovr) : nlohmann::json()},
                   {"int_K_f", r.int_K_f},
                   {"budget", r.budget},
                   {"seed", r.seed},
                   {"status", r.status}});
  }
  return arr;
}

std::vector<MatrixCell> default_matrix(const VerifyOptions& opt) {
  std::vector<MatrixCell> cells;
  for (const std::string body : {"ball", "cube"}) {
    for (const std::string dens : {"gaussian", "bump"}) {
      for (int n : {2, 3}) {
        const StarBody K = default_body(body, n);
        const Density f = default_density(dens, n);
        const double dovr = *known_dovr_bound(K);
        VerifyOptions vo = opt;
        {
          MatrixCell c{"theorem1", body, dens, n, 0.0, "evaluated", std::nullopt};
          c.report = verify_theorem1(K, f, dovr, vo);
          cells.push_back(std::move(c));
        }
        for (double q : {0.0, 0.5, 1.5, 2.5}) {
          MatrixCell c{"theorem3", body, dens, n, q, "evaluated", std::nullopt};
          if (!(q < n - 1.0)) {
            c.status = "rejected_out_of_range";
          } else {
            c.report = verify_theorem3(K, f, q, dovr, vo);
          }
          cells.push_back(std::move(c));
        }
      }
    }
  }
  return cells;
}

}  // namespace fracradon
