#include <cmath>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/profile.hpp"

using namespace fracradon;
using doctest::Approx;

TEST_CASE("taylor coefficients") {
  const auto g = taylor_coeffs_at_zero(Profile::gaussian(), 3);
  CHECK(g[0] == Approx(1.0));
  CHECK(g[1] == 0.0);
  CHECK(g[2] == Approx(-1.0).epsilon(1e-10));
  const auto c = taylor_coeffs_at_zero(Profile::constant_compact(1.0), 2);
  CHECK(c[0] == Approx(1.0));
  CHECK(c[1] == Approx(0.0));
  const auto e = taylor_coeffs_at_zero(Profile::exponential(), 2);
  CHECK(e[0] == Approx(1.0));
  CHECK(e[1] == Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("exponential profile has every fractional derivative equal to one") {
  for (double q : {-0.5, 0.3, 0.5, 1.5, 2.5}) {
    CHECK(frac_derivative_at_zero(Profile::exponential(), q) == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("gaussian closed form") {
  CHECK(gaussian_frac_derivative_closed_form(0.5) == Approx(0.58136831701911862).epsilon(1e-12));
  for (double q : {-0.5, 0.5, 2.0, 2.5, 3.7}) {
    CHECK(frac_derivative_at_zero(Profile::gaussian(), q) ==
          Approx(gaussian_frac_derivative_closed_form(q)).epsilon(1e-8));
  }
  CHECK(frac_derivative_at_zero(Profile::gaussian(), 2.0) == Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("order zero returns the value") {
  CHECK(frac_derivative_at_zero(Profile::gaussian(2.0, 3.0), 0.0) == Approx(3.0).epsilon(1e-12));
  CHECK(frac_derivative_at_zero(Profile::bump(1.5), 1e-9) == Approx(1.0).epsilon(1e-7));
}

TEST_CASE("result does not depend on the regularization order") {
  for (const auto& phi : {Profile::gaussian(), Profile::bump(2.0), Profile::cauchy()}) {
    const double a = frac_derivative_at_zero(phi, 0.5, 1);
    CHECK(frac_derivative_at_zero(phi, 0.5, 2) == Approx(a).epsilon(1e-7));
    CHECK(frac_derivative_at_zero(phi, 0.5, 3) == Approx(a).epsilon(1e-7));
  }
}

TEST_CASE("continuation agrees with the plain integral for negative order") {
  for (double q : {-0.7, -0.5, -0.2}) {
    for (const auto& phi : {Profile::gaussian(), Profile::exponential(2.0), Profile::bump(1.0)}) {
      CHECK(frac_derivative_at_zero(phi, q) == Approx(frac_derivative_unregularized(phi, q)).epsilon(1e-8));
    }
  }
}

TEST_CASE("odd-order quantity") {
  CHECK(frac_derivative_odd(Profile::gaussian(), 1) == Approx(std::sqrt(kPi / 2.0)).epsilon(1e-10));
  CHECK(frac_derivative_odd(Profile::cauchy(), 1) == Approx(kPi / 2.0).epsilon(1e-10));
  CHECK(frac_derivative_odd(Profile::gaussian(1.0, 2.0), 1) ==
        Approx(2.0 * frac_derivative_odd(Profile::gaussian(), 1)).epsilon(1e-12));
  CHECK_THROWS_AS(frac_derivative_odd(Profile::exponential(), 1), DomainError);
}

TEST_CASE("plain continuation vanishes toward odd orders for even profiles") {
  const double near = std::abs(frac_derivative_at_zero(Profile::gaussian(), 1.0 - 1e-5));
  const double far = std::abs(frac_derivative_at_zero(Profile::gaussian(), 0.9));
  CHECK(near < 1e-3 * far);
  CHECK_THROWS_AS(frac_derivative_at_zero(Profile::gaussian(), 1.0), OddOrderError);
  CHECK_THROWS_AS(frac_derivative_at_zero(Profile::gaussian(), 3.0 + 1e-8), OddOrderError);
}

TEST_CASE("section normalization") {
  const auto g = Profile::gaussian();
  CHECK(frac_derivative_theorem(g, 0.5) ==
        Approx(frac_derivative_at_zero(g, 0.5) / std::cos(0.25 * kPi)).epsilon(1e-14));
  CHECK(frac_derivative_theorem(g, 1.0) == Approx(frac_derivative_odd(g, 1)).epsilon(1e-14));
  CHECK(frac_derivative_theorem(g, 2.0) == Approx(1.0).epsilon(1e-10));
  // Even multiplier |xi|^q is positive, so the Gaussian value is too.
  for (double q : {0.5, 1.5, 2.5, 3.5}) CHECK(frac_derivative_theorem(g, q) > 0.0);
}

TEST_CASE("scaling law") {
  for (double q : {0.5, 2.5}) {
    for (double a : {0.5, 2.0}) {
      const auto g = Profile::gaussian();
      CHECK(frac_derivative_at_zero(g.scaled(a), q) ==
            Approx(std::pow(a, q) * frac_derivative_at_zero(g, q)).epsilon(1e-6));
    }
  }
}

TEST_CASE("tabulated profile") {
  std::vector<double> t, v;
  for (int i = 0; i <= 800; ++i) {
    t.push_back(i * 0.01);
    v.push_back(std::exp(-0.5 * t.back() * t.back()));
  }
  const auto p = Profile::tabulated(t, v);
  CHECK(p.smoothness_m() <= 2);
  CHECK(p(0.123) == Approx(std::exp(-0.5 * 0.123 * 0.123)).epsilon(1e-6));
  CHECK(frac_derivative_at_zero(p, 0.5) == Approx(gaussian_frac_derivative_closed_form(0.5)).epsilon(1e-3));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(frac_derivative_at_zero(Profile::gaussian(), -1.0), DomainError);
  CHECK_THROWS_AS(frac_derivative_at_zero(Profile::gaussian(), 2.5, 2), DomainError);
}
