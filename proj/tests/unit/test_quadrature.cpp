#include <cmath>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/quadrature.hpp"

using namespace fracradon;
using doctest::Approx;

TEST_CASE("smooth integrands") {
  auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  r = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(r.value == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("endpoint singularity") {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.value == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("error estimate bounds the true error") {
  const auto r = integrate([](double x) { return std::log(x); }, 0.0, 1.0);
  CHECK(std::abs(r.value + 1.0) <= std::max(r.error, 1e-13));
}

TEST_CASE("pieces add") {
  const auto r = integrate_pieces([](double x) { return std::abs(x); }, {-1.0, 0.0, 2.0});
  CHECK(r.value == Approx(2.5).epsilon(1e-14));
}

TEST_CASE("empty interval") { CHECK(integrate([](double) { return 1.0; }, 3.0, 3.0).value == 0.0); }

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {1, 4, 16, 40}) {
    const auto g = gauss_legendre(n);
    double wsum = 0.0, moment = 0.0;
    for (int i = 0; i < n; ++i) {
      wsum += g.weights[i];
      moment += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
    }
    CHECK(wsum == Approx(2.0).epsilon(1e-14));
    CHECK(moment == Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}
