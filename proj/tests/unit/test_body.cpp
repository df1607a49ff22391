#include <cmath>
#include <random>

#include <doctest.h>

#include "fracradon/body.hpp"
#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"

using namespace fracradon;
using doctest::Approx;

TEST_CASE("minkowski functionals") {
  const double x[3] = {0.3, -1.2, 0.4};
  const double r = std::sqrt(0.09 + 1.44 + 0.16);
  CHECK(minkowski_functional(StarBody::ball(3, 2.0), x) == Approx(r / 2.0));
  CHECK(minkowski_functional(StarBody::cube(3, 0.5), x) == Approx(2.4));
  const double y[3] = {0.6, -2.4, 0.8};
  CHECK(minkowski_functional(StarBody::lp_ball(3, 1.0), y) == Approx(2.0 * minkowski_functional(StarBody::lp_ball(3, 1.0), x)));
  const double z[3] = {0.0, 0.0, 0.0};
  CHECK(minkowski_functional(StarBody::cube(3), z) == 0.0);
}

TEST_CASE("membership matches the gauge") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& K : {StarBody::ball(3), StarBody::cube(3, 0.7), StarBody::lp_ball(3, 1.5),
                        StarBody::ellipsoid({1.0, 0.5, 2.0})}) {
    for (int i = 0; i < 10000; ++i) {
      double x[3] = {g(rng), g(rng), g(rng)};
      CHECK(K.contains(x) == (minkowski_functional(K, x) <= 1.0));
    }
  }
}

TEST_CASE("volumes") {
  CHECK(volume(StarBody::ball(3)).value == Approx(4.0 * kPi / 3.0).epsilon(1e-6));
  CHECK(volume(StarBody::cube(3, 0.5)).value == Approx(1.0).epsilon(1e-6));
  CHECK(volume(StarBody::cube(2, 0.5)).value == Approx(1.0).epsilon(1e-6));
  CHECK(volume(StarBody::lp_ball(2, 1.0)).value == Approx(2.0).epsilon(1e-6));
  CHECK(volume(StarBody::ellipsoid({1.0, 2.0, 0.5})).value == Approx(4.0 * kPi / 3.0).epsilon(1e-6));
  const auto mc = volume(StarBody::cube(4, 0.5), VolumeMethod::monte_carlo, 200000, 1);
  CHECK(std::abs(mc.value - 1.0) <= 3.0 * mc.std_error);
  CHECK(mc.std_error > 0.0);
}

TEST_CASE("dilation") {
  const auto K = StarBody::lp_ball(3, 1.3, 0.8);
  const double v = volume(K).value;
  CHECK(volume(dilate(K, 1.7)).value == Approx(std::pow(1.7, 3) * v).epsilon(1e-6));
  CHECK(volume(dilate(K, std::pow(v, -1.0 / 3.0))).value == Approx(1.0).epsilon(1e-6));
  CHECK(radial_distance(dilate(StarBody::ball(3), 2.0), StarBody::ball(3, 2.0)).value == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("radial distance") {
  CHECK(radial_distance(StarBody::cube(2), StarBody::cube(2)).value == 0.0);
  CHECK(radial_distance(StarBody::ball(3, 1.0), StarBody::ball(3, 2.0)).value == Approx(1.0));
  CHECK(radial_distance(StarBody::ball(2, 1.0), StarBody::cube(2, 1.0)).value == Approx(std::sqrt(2.0) - 1.0).epsilon(1e-5));
}

TEST_CASE("scaled ball inclusion") {
  for (int n : {2, 3, 5}) {
    const double r = std::sqrt(static_cast<double>(n));
    CHECK(contains_scaled_ball(StarBody::ball(n, r), r));
    CHECK_FALSE(contains_scaled_ball(StarBody::cube(n, 1.0), 2.0));
    CHECK(contains_scaled_ball(StarBody::cube(n, r), r));
  }
}

TEST_CASE("symmetric bodies have even radial functions") {
  const auto K = StarBody::ellipsoid({1.0, 0.3, 2.0});
  for (const auto& u : sphere_mesh(3, 200)) {
    std::vector<double> m(u.components());
    for (double& v : m) v = -v;
    CHECK(K.rho(u) == Approx(K.rho(Direction(m))).epsilon(1e-14));
  }
}

TEST_CASE("tabulated body") {
  std::vector<Direction> dirs;
  std::vector<double> rho;
  for (int i = 0; i < 360; ++i) {
    const double t = 2.0 * kPi * i / 360.0;
    dirs.emplace_back(std::vector<double>{std::cos(t), std::sin(t)});
    rho.push_back(1.5);
  }
  const auto K = StarBody::tabulated(dirs, rho, true);
  CHECK(volume(K).value == Approx(kPi * 2.25).epsilon(1e-6));
}

TEST_CASE("integration over bodies") {
  const auto K = StarBody::ball(3, 1.0);
  auto one = [](std::span<const double>) { return 1.0; };
  CHECK(integrate_over_body(K, one).value == Approx(4.0 * kPi / 3.0).epsilon(1e-8));
  auto r2 = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; };
  CHECK(integrate_over_body(K, r2).value == Approx(4.0 * kPi / 5.0).epsilon(1e-8));
  const auto mc = integrate_over_body_mc(K, r2, 400000, 9);
  CHECK(std::abs(mc.value - 4.0 * kPi / 5.0) <= 4.0 * mc.std_error);
  const auto mc2 = integrate_over_body_mc(K, r2, 400000, 9);
  CHECK(mc.value == mc2.value);
  CHECK_THROWS_AS(integrate_over_body(StarBody::ball(5), one), DomainError);
}
