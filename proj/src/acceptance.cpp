#include "fracradon/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "fracradon/constants.hpp"
#include "fracradon/construct.hpp"
#include "fracradon/error.hpp"
#include "fracradon/field.hpp"
#include "fracradon/kernels.hpp"
#include "fracradon/profile.hpp"
#include "fracradon/radon.hpp"
#include "fracradon/sphere.hpp"
#include "fracradon/verify.hpp"

namespace fracradon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Uniform on [0, 1) from the top 53 bits, identical on every standard library.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

Direction generic_direction(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + i;
  return Direction(v);
}

CriterionResult c1_fractional_oracles() {
  const auto t0 = Clock::now();
  Check c;
  double worst_exp = 0.0, worst_gauss = 0.0;
  const auto e = Profile::exponential();
  for (double q : {-0.5, 0.3, 0.5, 1.5, 2.5}) worst_exp = std::max(worst_exp, std::abs(frac_derivative_at_zero(e, q) - 1.0));
  const auto g = Profile::gaussian();
  for (double q : {0.5, 2.0, 2.5}) {
    worst_gauss = std::max(worst_gauss, std::abs(frac_derivative_at_zero(g, q) - gaussian_frac_derivative_closed_form(q)));
  }
  const double q0 = std::abs(frac_derivative_at_zero(g, 0.0) - 1.0);
  const double t = seconds_since(t0);
  c.require(worst_exp <= 1e-6, "exponential oracle");
  c.require(worst_gauss <= 1e-6, "gaussian closed form");
  c.require(q0 <= 1e-8, "q = 0 returns phi(0)");
  c.require(t < 5.0, "runtime < 5 s");
  c.detail << "exp err " << sci(worst_exp) << ", gaussian err " << sci(worst_gauss) << ", q=0 err "
           << sci(q0) << ", " << sci(t) << " s";
  return {1, "fractional-derivative oracles", c.pass, c.detail.str(), 0.0};
}

CriterionResult c2_odd_quantity() {
  Check c;
  const double g = std::abs(frac_derivative_odd(Profile::gaussian(), 1) - std::sqrt(kPi / 2.0));
  const double h = std::abs(frac_derivative_odd(Profile::cauchy(), 1) - kPi / 2.0);
  c.require(g <= 1e-6, "gaussian k=1");
  c.require(h <= 1e-6, "cauchy k=1");
  c.detail << "gaussian err " << sci(g) << ", cauchy err " << sci(h);
  return {2, "odd-order quantity", c.pass, c.detail.str(), 0.0};
}

CriterionResult c3_m_independence() {
  Check c;
  const auto g = Profile::gaussian();
  std::vector<double> v;
  for (int m : {1, 2, 3}) v.push_back(frac_derivative_at_zero(g, 0.5, m));
  const double spread = std::max({std::abs(v[0] - v[1]), std::abs(v[1] - v[2]), std::abs(v[0] - v[2])});
  c.require(spread <= 1e-7, "m = 1, 2, 3 agree");
  c.detail << "spread " << sci(spread);
  return {3, "independence of the regularization order", c.pass, c.detail.str(), 0.0};
}

CriterionResult c4_fourier_slice() {
  Check c;
  for (int n : {2, 3}) {
    const auto xi = generic_direction(n);
    // Sections by hyperplane quadrature, not the closed-form profiles.
    SliceGrid grid;
    grid.force_quadrature = true;
    const double rg = fourier_slice_residual(Density::gaussian(n), xi, grid);
    const double rb = fourier_slice_residual(Density::indicator(StarBody::ball(n)), xi, grid);
    c.require(rg <= 1e-8, "gaussian n=" + std::to_string(n));
    c.require(rb <= 1e-3, "ball n=" + std::to_string(n));
    c.detail << "n=" << n << " gaussian " << sci(rg) << " ball " << sci(rb) << "; ";
  }
  return {4, "Fourier-slice identity", c.pass, c.detail.str(), 0.0};
}

CriterionResult c5_two_paths() {
  const auto t0 = Clock::now();
  Check c;
  for (auto [n, q] : {std::pair{2, 0.5}, {2, 2.5}, {3, 0.5}, {3, 2.5}}) {
    const Density f = Density::gaussian(n);
    const auto xi = generic_direction(n);
    const double exact = radon_frac_deriv_theorem(f, xi, q);
    double err[3];
    int i = 0;
    for (int M : {32, 64, 128}) {
      SectionGrid g;
      g.M = M;
      err[i++] = rel(radon_frac_deriv_via_laplacian(f, xi, q, g).section, exact);
    }
    const std::string cell = "(" + std::to_string(n) + "," + sci(q) + ")";
    c.require(err[1] <= 1e-2, cell + " M=64");
    c.require(err[2] < err[0], cell + " trend");
    c.detail << "n=" << n << " q=" << q << ": " << sci(err[0]) << " " << sci(err[1]) << " "
             << sci(err[2]) << "; ";
  }
  const double t = seconds_since(t0);
  c.require(t < 120.0, "runtime < 2 min");
  c.detail << sci(t) << " s";
  return {5, "two-path section identity", c.pass, c.detail.str(), 0.0};
}

double rel_l2(const GridField& a, const GridField& b) {
  double num = 0.0, den = 0.0;
  for (long i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

CriterionResult c6_constants() {
  Check c;
  for (auto [n, q, tol] : {std::tuple{3, 2.0, 1e-6}, {2, 1.0, 1e-6}, {3, 1.5, 1e-4}}) {
    const auto rep = verify_riesz_pair(n, q, tol);
    c.require(rep.verdict == Verdict::holds, "riesz pair (" + std::to_string(n) + "," + sci(q) + ")");
    c.detail << "pair(" << n << "," << q << ") diff " << sci(std::abs(rep.lhs - rep.rhs)) << "; ";
  }
  const GridField f = sample(Density::gaussian(2), 8.0, 64);
  const GridField spectral = fractional_laplacian(f, -1.0);
  const GridField conv = riesz_convolution(f, 1.0);
  const double d = rel_l2(spectral, conv);
  c.require(d <= 1e-3, "spectral vs convolution");
  c.detail << "spectral vs convolution rel L2 " << sci(d);
  return {6, "Fourier and kernel constants", c.pass, c.detail.str(), 0.0};
}

GridField random_step(int n, int M, std::mt19937_64& rng) {
  GridField f(n, 1.0, M);
  for (auto& v : f.data()) v = unit(rng) < 0.3 ? 0.0 : unit(rng);
  return f;
}

Box random_box(int n, std::mt19937_64& rng) {
  Box b;
  for (int a = 0; a < n; ++a) {
    double lo = -1.0 + 2.0 * unit(rng), hi = -1.0 + 2.0 * unit(rng);
    if (lo > hi) std::swap(lo, hi);
    b.emplace_back(lo, hi);
  }
  return b;
}

CriterionResult c7_convolution_lemma() {
  Check c;
  std::mt19937_64 rng(derive_seed(7, 0));
  int held = 0, total = 0;
  for (auto [n, count, Mmax] : {std::tuple{1, 200, 24}, {2, 50, 8}}) {
    for (int i = 0; i < count; ++i) {
      const int M = 2 * (1 + static_cast<int>(unit(rng) * (Mmax / 2)));
      const auto f = random_step(n, M, rng);
      const auto g = random_step(n, M, rng);
      const auto rep = check_convolution_lemma(f, g, random_box(n, rng), random_box(n, rng));
      ++total;
      if (rep.verdict == Verdict::holds) ++held;
    }
  }
  c.require(held == total, "all random instances hold");
  GridField ind(1, 2.0, 16);
  for (long i = 0; i < ind.size(); ++i) ind[i] = (ind.coord(static_cast<int>(i)) > 0.0 && ind.coord(static_cast<int>(i)) < 1.0) ? 1.0 : 0.0;
  const auto eq = check_convolution_lemma(ind, ind, {{0.0, 1.0}}, {{0.0, 1.0}});
  const double gap = std::abs(eq.lhs - eq.rhs);
  c.require(gap <= 1e-12, "indicator equality");
  c.detail << held << "/" << total << " hold; indicator gap " << sci(gap);
  return {7, "convolution lemma on step functions", c.pass, c.detail.str(), 0.0};
}

CriterionResult c8_gamma_inequality() {
  Check c;
  std::mt19937_64 rng(derive_seed(8, 0));
  int held = 0;
  for (int i = 0; i < 1000; ++i) {
    const double lambda = 50.0 * unit(rng);
    const double mu = lambda * unit(rng);
    if (check_gamma_inequality(lambda, mu).holds) ++held;
  }
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 5.0, 17.3, 50.0}) {
    const auto r = check_gamma_inequality(lambda, 0.0);
    worst = std::max(worst, rel(r.lhs, r.rhs));
  }
  c.require(held == 1000, "1000 random pairs");
  c.require(worst <= 1e-12, "equality at mu = 0");
  c.detail << held << "/1000 hold; mu=0 rel gap " << sci(worst);
  return {8, "Gamma inequality", c.pass, c.detail.str(), 0.0};
}

CriterionResult c9_theorem3() {
  Check c;
  for (int n : {2, 3}) {
    const StarBody K = volume_one(StarBody::ball(n));
    const Density f = Density::gaussian(n);
    for (double q : {0.0, 0.5, 1.5, 2.5}) {
      const std::string cell = "n=" + std::to_string(n) + " q=" + sci(q);
      if (q < n - 1.0) {
        const auto rep = verify_theorem3(K, f, q, 1.0);
        c.require(rep.verdict == Verdict::holds && rep.margin > 0.0, cell + " holds");
        c.detail << cell << " margin " << sci(rep.margin) << "; ";
      } else {
        bool rejected = false;
        try {
          verify_theorem3(K, f, q, 1.0);
        } catch (const DomainError&) {
          rejected = true;
        }
        c.require(rejected, cell + " outside the hypothesis must be rejected");
        c.detail << cell << " rejected (q >= n-1); ";
      }
    }
  }
  const StarBody K3 = volume_one(StarBody::ball(3));
  bool generic_rejected = false;
  try {
    VerifyOptions o;
    o.pathway = Pathway::generic;
    verify_theorem3(K3, Density::gaussian(3), 1.0, 1.0, o);
  } catch (const OddOrderError&) {
    generic_rejected = true;
  }
  c.require(generic_rejected, "q=1 rejected on the generic path");
  const auto odd = verify_theorem3(K3, Density::gaussian(3), 1.0, 1.0);
  c.require(odd.verdict == Verdict::holds && odd.params["pathway"] == "odd_limit", "q=1 on the odd pathway");
  int evaluated = 0, fails = 0;
  for (const auto& cell : default_matrix()) {
    if (!cell.report) continue;
    ++evaluated;
    if (cell.report->verdict == Verdict::fails) ++fails;
  }
  c.require(fails == 0, "no fails in the default matrix");
  c.detail << "odd pathway margin " << sci(odd.margin) << "; matrix " << evaluated << " cells, "
           << fails << " fails";
  return {9, "fractional slicing inequality", c.pass, c.detail.str(), 0.0};
}

CriterionResult c10_construction() {
  Check c;
  for (const std::string family : {"scaled_ball", "scaled_cube"}) {
    const auto s = surrogate_example(3, family);
    for (double q : {0.5, 1.5}) {
      const std::string cell = family + " q=" + sci(q);
      const auto ex = build_example(s.K, s.f, q);
      const auto norm = ex.normalization_report(1e-3);
      c.require(norm.verdict == Verdict::holds, cell + " normalization");
      const auto cert = lower_bound_certificate(s.K, s.f, q);
      const double z = cert.extra.value("margin_in_stderr", 0.0);
      c.require(cert.verdict == Verdict::holds && z >= 3.0, cell + " certificate");
      c.detail << cell << " |Vol(D)-1| " << sci(std::abs(ex.volume_D - 1.0)) << " |int g-1| "
               << sci(std::abs(ex.mass_D - 1.0)) << " margin/stderr " << sci(z) << "; ";
    }
  }
  for (const auto& rep : check_scaling_identities(3, 0.5, 1.7, 1e-6)) {
    c.require(rep.verdict == Verdict::holds, rep.statement);
    c.detail << rep.statement << " diff " << sci(std::abs(rep.lhs - rep.rhs)) << "; ";
  }
  return {10, "example construction pipeline", c.pass, c.detail.str(), 0.0};
}

CriterionResult c11_determinism(Clock::time_point suite_start, bool whole_suite) {
  Check c;
  SweepConfig cfg;
  cfg.seed = 11;
  const int threads = worker_threads();
  const std::string a = sweep_csv(sweep_table(cfg));
  const std::string b = sweep_csv(sweep_table(cfg));
  set_worker_threads(threads + 1);
  const std::string d = sweep_csv(sweep_table(cfg));
  set_worker_threads(threads);
  c.require(a == b, "same seed gives identical rows");
  c.require(a == d, "thread count does not change rows");
  c.detail << "sweep rows identical (" << a.size() << " bytes, " << threads << " and " << threads + 1
           << " threads)";
  if (whole_suite) {
    const double t = seconds_since(suite_start);
    c.require(t < 900.0, "suite under 15 min");
    c.detail << "; suite " << sci(t) << " s";
  }
  return {11, "determinism and runtime", c.pass, c.detail.str(), 0.0};
}

CriterionResult dispatch(int id, Clock::time_point suite_start, bool whole_suite) {
  switch (id) {
    case 1: return c1_fractional_oracles();
    case 2: return c2_odd_quantity();
    case 3: return c3_m_independence();
    case 4: return c4_fourier_slice();
    case 5: return c5_two_paths();
    case 6: return c6_constants();
    case 7: return c7_convolution_lemma();
    case 8: return c8_gamma_inequality();
    case 9: return c9_theorem3();
    case 10: return c10_construction();
    case 11: return c11_determinism(suite_start, whole_suite);
  }
  throw DomainError("no acceptance criterion " + std::to_string(id));
}

CriterionResult guarded(int id, Clock::time_point suite_start, bool whole_suite) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = dispatch(id, suite_start, whole_suite);
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0.0};
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) { return guarded(id, Clock::now(), false); }

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
  const auto start = Clock::now();
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(guarded(id, start, true));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char t[32];
  std::snprintf(t, sizeof t, "%.1f", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " +
         r.detail + " (" + t + " s)";
}

nlohmann::json results_json(const std::vector<CriterionResult>& results) {
  auto arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  return arr;
}

}  // namespace fracradon
