#include <cmath>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/quadrature.hpp"
#include "fracradon/radon.hpp"

using namespace fracradon;
using doctest::Approx;

namespace {

Direction tilted(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * i;
  return Direction(v);
}

RadonOptions quadrature() {
  RadonOptions o;
  o.method = RadonMethod::quadrature;
  return o;
}

}  // namespace

TEST_CASE("gaussian hyperplane integrals") {
  for (int n : {2, 3, 4}) {
    const auto f = Density::gaussian(n);
    for (double t : {0.0, 0.7, 2.0}) {
      const double exact = std::pow(2.0 * kPi, 0.5 * (n - 1)) * std::exp(-0.5 * t * t);
      CHECK(radon(f, tilted(n), t) == Approx(exact).epsilon(1e-12));
      CHECK(radon(f, tilted(n), t, quadrature()) == Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("monte carlo agrees within its error") {
  RadonOptions o;
  o.method = RadonMethod::monte_carlo;
  o.samples = 200000;
  o.seed = 5;
  const auto v = radon_value(Density::gaussian(3), tilted(3), 0.4, o);
  CHECK(std::abs(v.value - 2.0 * kPi * std::exp(-0.08)) <= 4.0 * v.std_error);
  CHECK(radon_value(Density::gaussian(3), tilted(3), 0.4, o).value == v.value);
}

TEST_CASE("ball indicator through the centre") {
  for (int n : {2, 3, 4}) {
    const auto f = Density::indicator(StarBody::ball(n));
    CHECK(radon(f, tilted(n), 0.0, quadrature()) == Approx(unit_ball_volume(n - 1)).epsilon(1e-8));
  }
  const auto f = Density::indicator(StarBody::ball(2));
  CHECK(radon(f, tilted(2), 1.5) == 0.0);
}

TEST_CASE("evenness in t") {
  const auto f = Density::anisotropic_gaussian({1.0, 0.4, 0.7}, tilted(3));
  for (const auto& xi : sphere_mesh(3, 12)) {
    CHECK(radon(f, xi, 0.6, quadrature()) == Approx(radon(f, xi, -0.6, quadrature())).epsilon(1e-10));
  }
}

TEST_CASE("profile mass equals total mass") {
  for (const auto& f : {Density::gaussian(3, 0.8), Density::indicator(StarBody::ball(3)), Density::bump(3, 1.2)}) {
    const auto P = radon_profile(f, tilted(3), quadrature());
    const double T = f.cutoff_radius();
    const double m = 2.0 * integrate([&](double t) { return P(t); }, 0.0, T, {1e-12, 1e-9, 4000}).value;
    double total;
    if (f.family() == "gaussian") total = std::pow(2.0 * kPi * 0.64, 1.5);
    else if (f.family() == "bump") total = integrate_over_body(StarBody::ball(3, 1.2), f.function()).value;
    else total = 4.0 * kPi / 3.0;
    CHECK(m == Approx(total).epsilon(1e-6));
  }
}

TEST_CASE("fractional derivatives of sections") {
  const auto f2 = Density::gaussian(2);
  const auto xi = tilted(2);
  CHECK(radon_frac_deriv(f2, xi, 0.0) == Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
  CHECK(radon_frac_deriv(f2, xi, 0.5) == Approx(std::sqrt(2.0 * kPi) * gaussian_frac_derivative_closed_form(0.5)).epsilon(1e-8));
  CHECK(radon_frac_deriv(Density::gaussian(3), tilted(3), 1.0) == Approx(2.0 * kPi * std::sqrt(kPi / 2.0)).epsilon(1e-8));
  CHECK(radon_frac_deriv(f2, xi, 1e-6) == Approx(radon(f2, xi, 0.0)).epsilon(1e-4));
  // The same through the hyperplane quadrature profile.
  const auto g = Density::anisotropic_gaussian({1.0, 0.6}, tilted(2));
  CHECK(radon_frac_deriv(g, xi, 0.5, quadrature()) == Approx(radon_frac_deriv(g, xi, 0.5)).epsilon(1e-6));
}

TEST_CASE("laplacian path matches the profile path") {
  const auto f = Density::gaussian(2);
  const auto xi = tilted(2);
  for (double q : {0.0, 0.5}) {
    const double exact = radon_frac_deriv_theorem(f, xi, q);
    const auto s = radon_frac_deriv_via_laplacian(f, xi, q);
    CHECK(std::abs(s.section - exact) <= 1e-2 * std::abs(exact));
  }
  CHECK(radon_frac_deriv_via_laplacian(f, xi, 0.0).section == Approx(radon(f, xi, 0.0)).epsilon(1e-6));
  CHECK_THROWS_AS(radon_frac_deriv_via_laplacian(f, xi, 1.0), OddOrderError);
}

TEST_CASE("fourier slice") {
  CHECK(fourier_slice_residual(Density::gaussian(2), tilted(2)) <= 1e-8);
  CHECK(fourier_slice_residual(Density::indicator(StarBody::ball(2)), tilted(2)) <= 1e-3);
  SliceGrid g;
  g.force_quadrature = true;
  CHECK(fourier_slice_residual(Density::gaussian(3), tilted(3), g) <= 1e-8);
  CHECK(fourier_slice_residual(Density::scaled(Density::gaussian(2), 1.0, 0.0), tilted(2)) == 0.0);
}

TEST_CASE("maximum over directions") {
  const auto iso = max_over_directions(3, [](const Direction&) { return 2.5; });
  CHECK(iso.value - iso.mesh_min <= 1e-6);
  DirectionSearch s;
  s.mesh = 200;
  // Narrow along e_1: the plane e_1^perp carries the wide directions.
  const auto f = Density::anisotropic_gaussian({0.3, 3.0, 3.0}, Direction::axis(3, 0));
  const auto best = max_over_directions(f, 0.0, s, false, quadrature());
  CHECK(std::abs(best.best[0]) >= std::cos(5.0 * kPi / 180.0));
  const auto f2 = Density::anisotropic_gaussian({0.3, 3.0, 3.0}, Direction::axis(3, 0), 2.0);
  const auto best2 = max_over_directions(f2, 0.0, s, false, quadrature());
  CHECK(best2.value == Approx(2.0 * best.value).epsilon(1e-8));
}
