#include <cmath>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/density.hpp"
#include "fracradon/error.hpp"
#include "fracradon/field.hpp"

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

GridField analytic(int n, double L, int M, double (*fn)(double)) {
  GridField f(n, L, M);
  std::vector<double> x(n);
  for (long i = 0; i < f.size(); ++i) {
    f.node(i, x);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    f[i] = fn(r2);
  }
  return f;
}

}  // namespace

TEST_CASE("sampling") {
  const auto f = sample(Density::gaussian(1), 8.0, 64);
  CHECK(grid_integral(f) == Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
  const auto g = sample(Density::gaussian(2), 8.0, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) CHECK(g[i * 32 + j] == g[(31 - i) * 32 + (31 - j)]);
  const auto z = sample(Density::zero(2), 4.0, 16);
  for (double v : z.data()) CHECK(v == 0.0);
  CHECK_THROWS_AS(sample(Density::gaussian(2), 2.0, 16), BudgetError);
  CHECK_THROWS_AS(GridField(2, 1.0, 7), DomainError);
}

TEST_CASE("fourier transform of the gaussian") {
  const auto F = fourier(sample(Density::gaussian(2), 8.0, 64));
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const double a = F.coord(i), b = F.coord(j);
      const double exact = 2.0 * kPi * std::exp(-0.5 * (a * a + b * b));
      worst = std::max(worst, std::abs(F.data()[i * 64 + j] - exact));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("round trip and parseval") {
  const auto f = sample(Density::anisotropic_gaussian({1.0, 0.5}, Direction({1.0, 1.0})), 8.0, 64);
  const auto F = fourier(f);
  const auto back = real_part(inv_fourier(F));
  double worst = 0.0, e_space = 0.0, e_freq = 0.0;
  for (long i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(back[i] - f[i]));
    e_space += f[i] * f[i] * f.delta() * f.delta();
    e_freq += std::norm(F.data()[i]) * F.delta() * F.delta();
  }
  CHECK(worst <= 1e-12);
  CHECK(e_freq == Approx(std::pow(2.0 * kPi, 2) * e_space).epsilon(1e-8));
  // Transforming an even function twice multiplies it by (2 pi)^n.
  const auto twice = real_part(fourier(fourier(sample(Density::gaussian(1), 8.0, 64))));
  const auto once = sample(Density::gaussian(1), 8.0, 64);
  for (long i = 0; i < once.size(); ++i) CHECK(twice[i] == Approx(2.0 * kPi * once[i]).epsilon(1e-8));
}

TEST_CASE("fractional laplacian special orders") {
  const auto f = sample(Density::gaussian(2), 8.0, 64);
  const auto id = fractional_laplacian(f, 0.0);
  for (long i = 0; i < f.size(); ++i) CHECK(id[i] == Approx(f[i]).epsilon(1e-12));
  const auto lap = fractional_laplacian(f, 2.0);
  const auto exact = analytic(2, 8.0, 64, [](double r2) { return (2.0 - r2) * std::exp(-0.5 * r2); });
  CHECK(rel_l2(lap, exact) <= 1e-8);
  // Positive orders compose exactly on the grid.
  const auto h = fractional_laplacian(fractional_laplacian(f, 0.5), 1.5);
  CHECK(rel_l2(h, exact) <= 1e-8);
  // Negative orders: the free-space split reproduces the Riesz potential.
  CHECK(rel_l2(fractional_laplacian(f, -1.5), riesz_convolution(f, 1.5)) <= 1e-3);
}

TEST_CASE("riesz convolution agrees with the spectral inverse") {
  const auto f = sample(Density::gaussian(2), 8.0, 64);
  const auto a = riesz_convolution(f, 1.0);
  const auto b = fractional_laplacian(f, -1.0);
  CHECK(rel_l2(a, b) <= 1e-3);
  for (double v : a.data()) CHECK(v >= 0.0);
  GridField f2 = f;
  for (double& v : f2.data()) v *= 2.0;
  const auto a2 = riesz_convolution(f2, 1.0);
  for (long i = 0; i < a.size(); ++i) CHECK(a2[i] == Approx(2.0 * a[i]).epsilon(1e-13));
}

TEST_CASE("fft convolution matches the direct sum") {
  const auto f = sample(Density::gaussian(2, 0.7), 4.0, 16, false);
  const auto a = riesz_convolution(f, 0.8);
  const auto b = riesz_convolution_direct(f, 0.8);
  const auto c = riesz_convolution_direct(f, 0.8, SingularWeight::zeta_corrected, false);
  for (long i = 0; i < a.size(); ++i) {
    CHECK(a[i] == Approx(b[i]).epsilon(1e-12));
    CHECK(b[i] == c[i]);
  }
}

TEST_CASE("riesz pairing constants") {
  CHECK(verify_riesz_pair(3, 2.0, 1e-6).verdict == Verdict::holds);
  CHECK(verify_riesz_pair(2, 1.0, 1e-6).verdict == Verdict::holds);
  CHECK(verify_riesz_pair(3, 1.5, 1e-4).verdict == Verdict::holds);
}

TEST_CASE("epstein zeta") {
  CHECK(epstein_zeta(2, 1.0) == Approx(-3.900264920001956).epsilon(1e-9));
  CHECK(epstein_zeta(3, 1.0) == Approx(-2.8372974794806).epsilon(1e-9));
  // Z_1(s) = 2 zeta(s).
  CHECK(epstein_zeta(1, 2.0) == Approx(kPi * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("cube power integral") {
  CHECK(unit_cube_power_integral(2, 2.0) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(unit_cube_power_integral(3, 0.0) == Approx(1.0).epsilon(1e-12));
  CHECK(unit_cube_power_integral(1, -0.5) == Approx(2.0).epsilon(1e-10));
}

TEST_CASE("interpolation and sections") {
  const auto f = sample(Density::gaussian(2), 8.0, 64);
  const double x[2] = {0.3, -0.71};
  CHECK(interpolate(f, x, 8) == Approx(std::exp(-0.5 * (0.09 + 0.5041))).epsilon(1e-6));
  const double out[2] = {9.0, 0.0};
  CHECK(interpolate(f, out) == 0.0);
  CHECK(axis_section(f) == Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
  const auto d = grid_density(f);
  CHECK(d(x) == Approx(interpolate(f, x)).epsilon(1e-15));
}
