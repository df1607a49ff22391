#include <cmath>
#include <random>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"

using namespace fracradon;
using doctest::Approx;

TEST_CASE("gamma reference values") {
  CHECK(fracradon::gamma(1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(fracradon::gamma(0.5) == Approx(1.7724538509055160).epsilon(1e-14));
  CHECK(fracradon::gamma(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(fracradon::gamma(-0.5) == Approx(-3.5449077018110320).epsilon(1e-14));
  CHECK_THROWS_AS(fracradon::gamma(0.0), PoleError);
  CHECK_THROWS_AS(fracradon::gamma(-2.0), PoleError);
  CHECK(log_gamma(100.0) == Approx(359.13420536957540).epsilon(1e-14));
}

TEST_CASE("ball volumes and sphere areas") {
  CHECK(unit_ball_volume(2) == Approx(kPi).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == Approx(4.0 * kPi / 3.0).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == Approx(4.0 * kPi).epsilon(1e-15));
}

TEST_CASE("riesz fourier constant") {
  CHECK(riesz_fourier_constant(3, 2.0) == Approx(2.0 * kPi * kPi).epsilon(1e-13));
  CHECK(riesz_fourier_constant(2, 1.0) == Approx(2.0 * kPi).epsilon(1e-13));
  for (int n : {2, 3, 4}) {
    for (double q : {0.5, 1.0, 1.5}) {
      CHECK(riesz_fourier_constant(n, q) ==
            Approx(std::pow(2.0 * kPi, n) * laplacian_kernel_constant(n, q)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(riesz_fourier_constant(2, 2.0), DomainError);
}

TEST_CASE("laplacian kernel constant") {
  CHECK(laplacian_kernel_constant(2, 1.0) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  // c_{3,2} (2 pi)^3 equals the Fourier constant at exponent 3 - 2.
  CHECK(laplacian_kernel_constant(3, 2.0) * std::pow(2.0 * kPi, 3) ==
        Approx(riesz_fourier_constant(3, 2.0)).epsilon(1e-13));
  const double ref = std::pow(2.0, -0.5) * std::pow(kPi, -2.0) * std::tgamma(1.75) / std::tgamma(0.25);
  CHECK(laplacian_kernel_constant(4, 0.5) == Approx(ref).epsilon(1e-13));
}

TEST_CASE("example constant d_{n,q}") {
  CHECK(example_constant_dnq(4, 2.0) == Approx(1.0).epsilon(1e-14));
  CHECK(example_constant_dnq(3, 1.0) == Approx(2.0 * std::sqrt(3.0) / kPi).epsilon(1e-14));
  for (int n : {2, 3, 5}) CHECK(example_constant_dnq(n, kQZeroLimit) == Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(example_constant_dnq(3, 0.0), DomainError);
  CHECK_THROWS_AS(example_constant_dnq(3, 3.0), DomainError);
}

TEST_CASE("slicing front factor") {
  for (int n : {2, 3, 4, 6}) CHECK(theorem3_factor(n, 0.0, 1.0, 1.0) == Approx(n / (n - 1.0)).epsilon(1e-12));
  const double ref = 3.0 / (1.5 * std::pow(2.0, 0.5) * std::pow(kPi, -0.25) * std::tgamma(0.75));
  CHECK(theorem3_factor(3, 0.5, 1.0, 1.0) == Approx(ref).epsilon(1e-13));
  // Volume and d_ovr enter as Vol^{(q+1)/n} dovr^{q+1}.
  CHECK(theorem3_factor(3, 0.5, 8.0, 2.0) ==
        Approx(ref * std::pow(8.0, 0.5) * std::pow(2.0, 1.5)).epsilon(1e-13));
  CHECK_THROWS_AS(theorem3_factor(3, 1.0, 1.0, 1.0), OddOrderError);
  CHECK_THROWS_AS(theorem3_factor(3, 2.5, 1.0, 1.0), DomainError);
  CHECK(theorem3_factor_odd(4, 1, 1.0, 1.0) > 0.0);
  CHECK_THROWS_AS(theorem3_factor_odd(2, 1, 1.0, 1.0), DomainError);
}

TEST_CASE("normalized lower bound") {
  CHECK(eq7_lower_bound(4, 1.0, 1.0) == Approx(0.5));
  CHECK(eq7_lower_bound(1, 0.0, 1.0) == Approx(1.0));
  CHECK(eq7_lower_bound(5, 0.0, 2.0) == Approx(std::sqrt(0.4)));
}

TEST_CASE("slicing constant is below one") {
  for (int n = 2; n <= 10; ++n) CHECK(slicing_constant_cn(n) < 1.0);
}

TEST_CASE("gamma inequality") {
  auto r = check_gamma_inequality(5.0, 0.0);
  CHECK(r.holds);
  CHECK(r.lhs == Approx(r.rhs).epsilon(1e-14));
  r = check_gamma_inequality(2.0, 1.0);
  CHECK(r.lhs == Approx(2.0));
  CHECK(r.rhs == Approx(1.0));
  CHECK(r.holds);
  CHECK(check_gamma_inequality(0.7, 0.3).holds);
  r = check_gamma_inequality(3.0, 3.0);
  CHECK(std::isinf(r.lhs));
  CHECK(r.holds);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double lambda = 50.0 * u(rng);
    CHECK(check_gamma_inequality(lambda, lambda * u(rng)).holds);
  }
}

TEST_CASE("odd order detection") {
  CHECK(FracOrder(1.0).is_odd_integer());
  CHECK(FracOrder(3.0).odd_k() == 2);
  CHECK_FALSE(FracOrder(2.0).is_odd_integer());
  CHECK_FALSE(FracOrder(1.0 + 1e-9).is_odd_integer());
  CHECK(FracOrder(1.0 + 1e-9).near_odd_integer(1e-6));
}
