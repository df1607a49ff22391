#include <cmath>
#include <random>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/construct.hpp"
#include "fracradon/error.hpp"
#include "fracradon/radon.hpp"

using namespace fracradon;
using doctest::Approx;

namespace {

double rel_l2(const GridField& a, const GridField& b) {
  double num = 0.0, den = 0.0;
  for (long i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("negative-order density") {
  const auto f = Density::gaussian(2);
  const auto h0 = negative_order_density(f, 0.0);
  const auto s = sample(f, 8.0, 64);
  for (long i = 0; i < s.size(); ++i) CHECK(h0.field[i] == Approx(s[i]).epsilon(1e-14));
  const auto h = negative_order_density(f, 1.0);
  CHECK(rel_l2(h.field, riesz_convolution(s, 1.0)) <= 1e-3);
  CHECK(h.clamp_mass <= 1e-6 * h.total_mass);
  const auto h2 = negative_order_density(Density::gaussian(2, 1.0, 2.0), 1.0);
  for (long i = 0; i < s.size(); ++i) CHECK(h2.field[i] == Approx(2.0 * h.field[i]).epsilon(1e-12));
  ConstructionGrid conv;
  conv.use_convolution = true;
  CHECK(rel_l2(negative_order_density(f, 1.0, conv).field, h.field) <= 1e-3);
  CHECK_THROWS_AS(negative_order_density(f, 2.0), DomainError);
}

TEST_CASE("example construction normalizations") {
  const auto K = StarBody::cube(3, 0.7);
  const auto ex = build_example(K, Density::normal(3, 0.5), 0.5);
  CHECK(ex.volume_D == Approx(1.0).epsilon(1e-3));
  CHECK(ex.mass_D == Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(ex.mass_D_mc - 1.0) <= 4.0 * ex.mass_D_mc_stderr + 1e-3);
  CHECK(ex.a == Approx(2.0 * std::cbrt(ex.volume_K)));
  CHECK(ex.normalization_report().verdict == Verdict::holds);
  CHECK_THROWS_AS(build_example(K, Density::normal(3, 0.5), 2.0), DomainError);
}

TEST_CASE("order zero construction rescales sections by a^{-(n-1)} / Z") {
  const auto K = StarBody::cube(3, 0.5);
  const auto f = Density::normal(3, 0.4);
  const auto e1 = Direction::axis(3, 0);
  RadonOptions o;
  o.method = RadonMethod::quadrature;
  o.rel_tol = 1e-8;
  // The section of the interpolated g converges to the exact value at second order.
  double err[2];
  for (int k = 0; k < 2; ++k) {
    ConstructionOptions c;
    c.grid = {4.0, 64 << k, false};
    const auto ex = build_example(K, f, 0.0, c);
    CHECK(ex.a == Approx(2.0 * std::cbrt(ex.volume_K)));
    const double expected = radon(f, e1, 0.0) / (ex.Z * ex.a * ex.a);
    CHECK(ex.radq_g(e1) == Approx(expected).epsilon(1e-12));
    err[k] = std::abs(radon(ex.g, e1, 0.0, o) / expected - 1.0);
  }
  CHECK(err[1] < 3e-3);
  CHECK(err[1] < 0.35 * err[0]);
}

TEST_CASE("construction absorbs the scale of f") {
  const auto K = StarBody::ball(2, 1.0);
  const auto a = build_example(K, Density::normal(2, 0.5), 0.5);
  const auto b = build_example(K, Density::scaled(Density::normal(2, 0.5), 1.0, 3.0), 0.5);
  for (double x : {0.0, 0.1, 0.37}) {
    const double p[2] = {x, -0.5 * x};
    CHECK(a.g(p) == Approx(b.g(p)).epsilon(1e-8));
  }
}

TEST_CASE("lower bound certificate") {
  const double r = std::sqrt(3.0);
  const auto K = StarBody::ball(3, r);
  const auto f0 = Density::normal(3, 1.0);
  const double m = integrate_over_body(K, f0.function()).value;
  const auto f = Density::scaled(f0, 1.0, 1.0 / m);
  ConstructionOptions o;
  o.mc_samples = 200000;
  const auto rep = lower_bound_certificate(K, f, 1.0, o);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.relation == Relation::ge);
  CHECK_THROWS_AS(lower_bound_certificate(K, f, 3.0, o), DomainError);
  CHECK_THROWS_AS(lower_bound_certificate(StarBody::ball(3, 1.0), f, 1.0, o), DomainError);
}

TEST_CASE("convolution lemma on step functions") {
  GridField ind(1, 2.0, 16);
  for (int j = 0; j < 16; ++j) ind[j] = ind.coord(j) > 0.0 && ind.coord(j) < 1.0 ? 1.0 : 0.0;
  const auto eq = check_convolution_lemma(ind, ind, {{0.0, 1.0}}, {{0.0, 1.0}});
  CHECK(eq.lhs == Approx(1.0).epsilon(1e-14));
  CHECK(eq.rhs == Approx(1.0).epsilon(1e-14));
  CHECK(eq.verdict == Verdict::holds);
  CHECK(eq.extra["mass_outside_support_sum"].get<double>() == 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n : {1, 2}) {
    for (int i = 0; i < (n == 1 ? 200 : 30); ++i) {
      GridField f(n, 1.0, n == 1 ? 12 : 6), g(n, 1.0, n == 1 ? 12 : 6);
      for (auto& v : f.data()) v = u(rng) < 0.3 ? 0.0 : u(rng);
      for (auto& v : g.data()) v = u(rng) < 0.3 ? 0.0 : u(rng);
      Box A, B;
      for (int a = 0; a < n; ++a) {
        double p = 2.0 * u(rng) - 1.0, q = 2.0 * u(rng) - 1.0;
        A.emplace_back(std::min(p, q), std::max(p, q));
        p = 2.0 * u(rng) - 1.0;
        q = 2.0 * u(rng) - 1.0;
        B.emplace_back(std::min(p, q), std::max(p, q));
      }
      const auto rep = check_convolution_lemma(f, g, A, B);
      CHECK(rep.verdict == Verdict::holds);
      CHECK(rep.extra["mass_outside_support_sum"].get<double>() == 0.0);
    }
  }
}

TEST_CASE("surrogates") {
  for (int n = 2; n <= 6; ++n) {
    for (const std::string fam : {"scaled_ball", "scaled_cube"}) {
      const auto s = surrogate_example(n, fam);
      CHECK(s.mass_K >= 0.9);
      CHECK(s.mass_K <= 1.0);
      CHECK(contains_scaled_ball(s.K, std::sqrt(static_cast<double>(n))));
      CHECK(s.f.even());
    }
  }
  CHECK(surrogate_example(3, "scaled_ball").mass_K == Approx(0.95).epsilon(1e-6));
  CHECK_THROWS_AS(surrogate_example(3, "simplex"), DomainError);
}

TEST_CASE("substitution and scaling identities") {
  for (double a : {0.6, 1.7}) {
    for (const auto& rep : check_scaling_identities(3, 0.5, a, 1e-6)) CHECK(rep.verdict == Verdict::holds);
  }
  for (const auto& rep : check_scaling_identities(2, 2.5, 2.0, 1e-6)) CHECK(rep.verdict == Verdict::holds);
}
