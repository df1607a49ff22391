#include "fracradon/construct.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/profile.hpp"
#include "fracradon/radon.hpp"

namespace fracradon {

namespace {

void require_inside_box(const StarBody& K, double L, const char* who) {
  if (K.circumradius() > L) {
    throw DomainError(std::string(who) + ": body (circumradius " + std::to_string(K.circumradius()) +
                      ") does not fit in the grid box of half-width " + std::to_string(L));
  }
}

Estimate body_integral(const StarBody& K, const Density& f, double rel, long samples,
                       std::uint64_t seed) {
  if (K.dim() <= 4) return integrate_over_body(K, f.function(), f.cutoff_radius(), rel);
  return integrate_over_body_mc(K, f.function(), samples, seed);
}

}  // namespace

NegativeOrderDensity negative_order_density(const Density& f, double q,
                                            const ConstructionGrid& grid) {
  const int n = f.dim();
  if (!(q >= 0.0 && q < n)) throw DomainError("negative_order_density: requires 0 <= q < n");
  if (!f.even() || !f.nonnegative()) {
    throw DomainError("negative_order_density: f must be even and nonnegative");
  }
  auto field = sample(f, grid.L, grid.M);
  std::string method = "identity";
  GridField h = field;
  if (q > 0.0) {
    if (grid.use_convolution) {
      h = riesz_convolution(field, q);
      method = "riesz_convolution";
    } else {
      LaplacianInfo info;
      h = fractional_laplacian(field, -q, LaplacianMode::automatic, &info);
      method = "spectral_" + info.mode;
    }
  }
  double peak = 0.0, low = 0.0, clamp = 0.0;
  for (double& v : h.data()) {
    peak = std::max(peak, v);
    if (v < 0.0) {
      low = std::min(low, v);
      clamp -= v;
      v = 0.0;
    }
  }
  const double cell = std::pow(h.delta(), n);
  clamp *= cell;
  const double total = grid_integral(h);
  if (clamp > 1e-6 * total) {
    throw BudgetError("negative_order_density: clamped mass " + std::to_string(clamp) +
                      " exceeds 1e-6 of the total; refine the grid");
  }
  Density d = grid_density(h, 4);
  d.set_even(true);
  d.set_nonnegative(true);
  return {std::move(h), std::move(d), clamp, total, low, peak, method};
}

double ConstructionResult::radq_g(const Direction& xi) const {
  const int n = K.dim();
  return std::pow(a, q - (n - 1)) * radon(f, xi, 0.0) / Z;
}

VerificationReport ConstructionResult::normalization_report(double tol) const {
  VerificationReport rep;
  rep.statement = "construction_normalization";
  rep.params = {{"n", K.dim()}, {"q", q}, {"body", K.name()}, {"density", f.family()},
                {"scaling", scaling}, {"tol", tol}};
  rep.relation = Relation::eq;
  rep.lhs = std::max(std::abs(volume_D - 1.0), std::abs(mass_D - 1.0));
  rep.rhs = 0.0;
  rep.budgets.quadrature = tol;
  rep.method = "polar_quadrature";
  rep.finalize();
  rep.extra = {{"volume_D", volume_D},         {"mass_D", mass_D},
               {"mass_D_mc", mass_D_mc},       {"mass_D_mc_stderr", mass_D_mc_stderr},
               {"Z", Z},                       {"a", a},
               {"clamp_mass", h.clamp_mass},   {"h_method", h.method}};
  rep.notes = notes;
  return rep;
}

ConstructionResult build_example(const StarBody& K, const Density& f, double q,
                                 const ConstructionOptions& opt) {
  const int n = K.dim();
  if (f.dim() != n) throw DomainError("build_example: dimension mismatch");
  if (!K.symmetric()) throw DomainError("build_example: K must be origin-symmetric");
  if (!(q >= 0.0 && q < n - 1)) throw DomainError("build_example: requires 0 <= q < n - 1");
  const auto volK = volume(K, n <= 4 ? VolumeMethod::radial_quadrature : VolumeMethod::monte_carlo,
                           opt.mc_samples, opt.seed);
  const StarBody K2 = dilate(K, 2.0);
  require_inside_box(K2, opt.grid.L, "build_example");
  const double a = std::pow(std::pow(2.0, n) * volK.value, 1.0 / n);
  const StarBody D = opt.consistent_scaling ? dilate(K2, 1.0 / a)
                                            : dilate(K, std::pow(volK.value, -1.0 / n));
  auto h = negative_order_density(f, q, opt.grid);
  // Z = int_D h(a x) dx = a^{-n} int_{aD} h, and aD = 2K.
  const auto hK2 = integrate_over_body(K2, h.density.function(), 1e300, opt.rel_tol);
  const double Z = std::pow(a, -n) * hK2.value;
  if (!(Z > 0.0)) {
    throw Error("build_example: degenerate h (Z = " + std::to_string(Z) + ", clamp mass " +
                std::to_string(h.clamp_mass) + ")");
  }
  Density g = Density::scaled(h.density, a, 1.0 / Z);
  g.set_even(true);
  const double volD = volume(D, n <= 4 ? VolumeMethod::radial_quadrature : VolumeMethod::monte_carlo,
                             opt.mc_samples, opt.seed)
                          .value;
  const auto massD = integrate_over_body(D, g.function(), 1e300, opt.rel_tol);
  const auto massD_mc = integrate_over_body_mc(D, g.function(), opt.mc_samples, opt.seed);
  ConstructionResult res{K,
                         D,
                         f,
                         std::move(h),
                         std::move(g),
                         q,
                         a,
                         Z,
                         volK.value,
                         volD,
                         massD.value,
                         massD_mc.value,
                         massD_mc.std_error,
                         opt.consistent_scaling ? "consistent" : "literal",
                         {}};
  res.notes.push_back("Vol(2K)^{-1/n} (2K) = Vol(K)^{-1/n} K, so both scalings give the same D");
  return res;
}

VerificationReport lower_bound_certificate(const StarBody& K, const Density& f, double q,
                                           const ConstructionOptions& opt) {
  const int n = K.dim();
  if (f.dim() != n) throw DomainError("lower_bound_certificate: dimension mismatch");
  if (!(q > 0.0 && q < n)) throw DomainError("lower_bound_certificate: requires 0 < q < n");
  if (!contains_scaled_ball(K, std::sqrt(static_cast<double>(n)))) {
    throw DomainError("lower_bound_certificate: K must contain sqrt(n) B");
  }
  const StarBody K2 = dilate(K, 2.0);
  require_inside_box(K2, opt.grid.L, "lower_bound_certificate");
  auto h = negative_order_density(f, q, opt.grid);
  const auto lhs = integrate_over_body_mc(K2, h.density.function(), opt.mc_samples, opt.seed);
  const auto massK = body_integral(K, f, 1e-9, opt.mc_samples, derive_seed(opt.seed, 1));
  const double radial = n * unit_ball_volume(n) * std::pow(n, 0.5 * q) / q;
  const double c = laplacian_kernel_constant(n, q);
  VerificationReport rep;
  rep.statement = "laplacian_lower_bound";
  rep.params = {{"n", n}, {"q", q}, {"body", K.name()}, {"density", f.family()},
                {"grid", {{"L", opt.grid.L}, {"M", opt.grid.M}}}, {"samples", opt.mc_samples}};
  rep.seed = opt.seed;
  rep.relation = Relation::ge;
  rep.lhs = lhs.value;
  rep.rhs = c * radial * massK.value;
  rep.budgets.mc_stderr = lhs.std_error;
  rep.budgets.quadrature = c * radial * (massK.quad_error + 3.0 * massK.std_error);
  rep.budgets.grid = h.clamp_mass + 1e-3 * std::abs(lhs.value);
  rep.method = "monte_carlo+" + h.method;
  rep.finalize();
  rep.extra = {{"kernel_constant", c},
               {"radial_factor", radial},
               {"mass_K", massK.value},
               {"lhs_stderr", lhs.std_error},
               {"margin_in_stderr", lhs.std_error > 0.0 ? rep.margin / lhs.std_error : 0.0},
               {"clamp_mass", h.clamp_mass}};
  return rep;
}

namespace {

// int_lo^hi of (chi_[p, p+d] * chi_[r, r+d]), a triangle on [p+r, p+r+2d].
double triangle_mass(double lo, double hi, double start, double d) {
  auto cum = [&](double x) {
    const double u = x - start;
    if (u <= 0.0) return 0.0;
    if (u <= d) return 0.5 * u * u;
    if (u <= 2.0 * d) return d * d - 0.5 * (2.0 * d - u) * (2.0 * d - u);
    return d * d;
  };
  return hi > lo ? cum(hi) - cum(lo) : 0.0;
}

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

struct StepGrid {
  int n, M;
  double L, d;
  double left(int j) const { return -L + j * d; }
};

// int over the box of f*g for step functions f, g.
double convolution_mass(const GridField& f, const GridField& g, const Box& box) {
  const StepGrid s{f.dim(), f.points(), f.half_width(), f.delta()};
  std::vector<std::vector<double>> W(s.n, std::vector<double>(static_cast<std::size_t>(s.M) * s.M));
  for (int ax = 0; ax < s.n; ++ax)
    for (int i = 0; i < s.M; ++i)
      for (int j = 0; j < s.M; ++j)
        W[ax][i * s.M + j] = triangle_mass(box[ax].first, box[ax].second, s.left(i) + s.left(j), s.d);
  double acc = 0.0;
  if (s.n == 1) {
    for (int i = 0; i < s.M; ++i)
      for (int j = 0; j < s.M; ++j) acc += f[i] * g[j] * W[0][i * s.M + j];
    return acc;
  }
  const int M = s.M;
  for (int i1 = 0; i1 < M; ++i1)
    for (int j1 = 0; j1 < M; ++j1) {
      const double w1 = W[0][i1 * M + j1];
      if (w1 == 0.0) continue;
      double inner = 0.0;
      for (int i2 = 0; i2 < M; ++i2) {
        const double fv = f[i1 * M + i2];
        if (fv == 0.0) continue;
        for (int j2 = 0; j2 < M; ++j2) inner += fv * g[j1 * M + j2] * W[1][i2 * M + j2];
      }
      acc += w1 * inner;
    }
  return acc;
}

double box_mass(const GridField& f, const Box& box) {
  const StepGrid s{f.dim(), f.points(), f.half_width(), f.delta()};
  double acc = 0.0;
  for (long i = 0; i < f.size(); ++i) {
    long r = i;
    double w = 1.0;
    for (int ax = s.n - 1; ax >= 0; --ax) {
      const int j = static_cast<int>(r % s.M);
      r /= s.M;
      w *= overlap(s.left(j), s.left(j) + s.d, box[ax].first, box[ax].second);
    }
    acc += f[i] * w;
  }
  return acc;
}

// Mass of f*g outside supp f + supp g. The support sum is tracked in cell
// indices so the containment test is exact; each cell pair contributes a
// product of tents whose mass outside the index box is integrated directly.
double outside_support_mass(const GridField& f, const GridField& g) {
  const StepGrid s{f.dim(), f.points(), f.half_width(), f.delta()};
  auto index_range = [&](const GridField& h) {
    std::vector<std::pair<int, int>> r(s.n, {s.M, -1});
    for (long i = 0; i < h.size(); ++i) {
      if (h[i] == 0.0) continue;
      long rem = i;
      for (int ax = s.n - 1; ax >= 0; --ax) {
        const int j = static_cast<int>(rem % s.M);
        rem /= s.M;
        r[ax] = {std::min(r[ax].first, j), std::max(r[ax].second, j)};
      }
    }
    return r;
  };
  const auto rf = index_range(f), rg = index_range(g);
  if (rf[0].second < 0 || rg[0].second < 0) return 0.0;
  auto x = [&](int k) { return -2.0 * s.L + k * s.d; };
  std::vector<int> lo(s.n), hi(s.n);
  for (int ax = 0; ax < s.n; ++ax) {
    lo[ax] = rf[ax].first + rg[ax].first;
    hi[ax] = rf[ax].second + rg[ax].second + 2;
  }
  const long N = f.size();
  double acc = 0.0;
  for (long i = 0; i < N; ++i) {
    if (f[i] == 0.0) continue;
    for (long j = 0; j < N; ++j) {
      if (g[j] == 0.0) continue;
      long ri = i, rj = j;
      bool inside = true;
      double in_mass = 1.0;
      for (int ax = s.n - 1; ax >= 0; --ax) {
        const int k = static_cast<int>(ri % s.M) + static_cast<int>(rj % s.M);
        ri /= s.M;
        rj /= s.M;
        if (k < lo[ax] || k + 2 > hi[ax]) inside = false;
        in_mass *= triangle_mass(x(lo[ax]), x(hi[ax]), x(k), s.d);
      }
      if (!inside) acc += f[i] * g[j] * (std::pow(s.d * s.d, s.n) - in_mass);
    }
  }
  return acc;
}

nlohmann::json box_json(const Box& b) {
  auto j = nlohmann::json::array();
  for (const auto& [lo, hi] : b) j.push_back({lo, hi});
  return j;
}

}  // namespace

VerificationReport check_convolution_lemma(const GridField& f, const GridField& g, const Box& A,
                                           const Box& B) {
  const int n = f.dim();
  if (n > 2) throw DomainError("check_convolution_lemma: n <= 2 only");
  if (g.dim() != n || g.points() != f.points() || g.half_width() != f.half_width()) {
    throw DomainError("check_convolution_lemma: f and g must share a grid");
  }
  if (static_cast<int>(A.size()) != n || static_cast<int>(B.size()) != n) {
    throw DomainError("check_convolution_lemma: box dimension mismatch");
  }
  for (int ax = 0; ax < n; ++ax) {
    if (!(A[ax].first <= A[ax].second && B[ax].first <= B[ax].second)) {
      throw DomainError("check_convolution_lemma: empty box side");
    }
  }
  for (double v : f.data())
    if (v < 0.0) throw DomainError("check_convolution_lemma: f must be nonnegative");
  for (double v : g.data())
    if (v < 0.0) throw DomainError("check_convolution_lemma: g must be nonnegative");
  Box AB(n);
  for (int ax = 0; ax < n; ++ax) AB[ax] = {A[ax].first + B[ax].first, A[ax].second + B[ax].second};
  VerificationReport rep;
  rep.statement = "convolution_lemma";
  rep.params = {{"n", n}, {"A", box_json(A)}, {"B", box_json(B)},
                {"grid", {{"L", f.half_width()}, {"M", f.points()}}}};
  rep.relation = Relation::ge;
  rep.lhs = convolution_mass(f, g, AB);
  const double fa = box_mass(f, A), gb = box_mass(g, B);
  rep.rhs = fa * gb;
  rep.budgets.quadrature = 1e-10 * std::max(1.0, std::abs(rep.rhs));
  rep.method = "exact_step_functions";
  rep.finalize();
  // Equality is allowed, so a margin within the slack still counts as holding.
  if (rep.verdict == Verdict::inconclusive && rep.margin >= -rep.budgets.combined()) {
    rep.verdict = Verdict::holds;
    rep.notes.push_back("equality within slack");
  }
  const double outside = outside_support_mass(f, g);
  rep.extra = {{"int_A_f", fa}, {"int_B_g", gb}, {"mass_outside_support_sum", outside}};
  return rep;
}

Surrogate surrogate_example(int n, const std::string& family) {
  if (n < 2 || n > 6) throw DomainError("surrogate_example: requires 2 <= n <= 6");
  const double rn = std::sqrt(static_cast<double>(n));
  constexpr double kMass = 0.95;
  double sigma;
  std::optional<StarBody> K;
  if (family == "scaled_ball") {
    K = StarBody::ball(n, rn);
    boost::math::chi_squared chi(n);
    sigma = rn / std::sqrt(boost::math::quantile(chi, kMass));
  } else if (family == "scaled_cube") {
    K = StarBody::cube(n, rn);
    sigma = rn / (std::sqrt(2.0) * boost::math::erf_inv(std::pow(kMass, 1.0 / n)));
  } else {
    throw DomainError("surrogate_example: family must be scaled_ball or scaled_cube");
  }
  if (!contains_scaled_ball(*K, rn)) throw Error("surrogate_example: sqrt(n) B not inside K");
  Density f = Density::normal(n, sigma);
  // Adaptive cubature over a 4-cube at this tolerance does not finish in
  // reasonable time; Monte Carlo takes over from n = 4.
  const auto mass = n <= 3 ? integrate_over_body(*K, f.function(), f.cutoff_radius(), 1e-10)
                           : integrate_over_body_mc(*K, f.function(), 1000000, 0);
  return {*K, f, sigma, mass.value, family};
}

std::vector<VerificationReport> check_scaling_identities(int n, double q, double a, double tol) {
  if (n < 2 || n > 4) throw DomainError("check_scaling_identities: requires 2 <= n <= 4");
  if (!(a > 0.0)) throw DomainError("check_scaling_identities: a must be positive");
  std::vector<VerificationReport> out;
  {
    std::vector<double> sig(n), ax(n), dir(n);
    for (int i = 0; i < n; ++i) {
      sig[i] = 0.7 + 0.3 * i;
      ax[i] = 1.0;
      dir[i] = 1.0 + i;
    }
    const auto h = Density::anisotropic_gaussian(sig, Direction(ax));
    const auto ha = Density::scaled(h, a);
    const Direction xi(dir);
    const double t = 0.4;
    RadonOptions Q;
    Q.method = RadonMethod::quadrature;
    Q.rel_tol = 1e-11;
    VerificationReport rep;
    rep.statement = "radon_substitution";
    rep.params = {{"n", n}, {"a", a}, {"t", t}, {"tol", tol}};
    rep.relation = Relation::eq;
    rep.lhs = radon(ha, xi, t, Q);
    rep.rhs = std::pow(a, -(n - 1)) * radon(h, xi, a * t, Q);
    rep.budgets.quadrature = tol * std::abs(rep.rhs);
    rep.method = "polar_quadrature";
    rep.finalize();
    out.push_back(rep);
  }
  {
    const auto phi = Profile::gaussian();
    VerificationReport rep;
    rep.statement = "profile_scaling";
    rep.params = {{"q", q}, {"a", a}, {"tol", tol}};
    rep.relation = Relation::eq;
    rep.lhs = frac_derivative_theorem(phi.scaled(a), q);
    rep.rhs = std::pow(a, q) * frac_derivative_theorem(phi, q);
    rep.budgets.quadrature = tol * std::abs(rep.rhs);
    rep.method = "regularized_integral";
    rep.finalize();
    out.push_back(rep);
  }
  return out;
}

}  // namespace fracradon
