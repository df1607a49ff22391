#include "fracradon/constants.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracradon/error.hpp"

namespace fracradon {

namespace {

bool is_nonpositive_integer(double x) {
  return x <= kIntegerWindow && std::abs(x - std::round(x)) < kIntegerWindow;
}

void require_riesz_range(int n, double q, const char* what) {
  if (n < 1 || !(q > 0.0) || !(q < n)) {
    throw DomainError(std::string(what) + ": requires 0 < q < n (n=" + std::to_string(n) +
                      ", q=" + std::to_string(q) + ")");
  }
}

}  // namespace

FracOrder::FracOrder(double q) : q_(q) {
  if (!std::isfinite(q)) throw DomainError("FracOrder: q must be finite");
  const double r = std::round(q);
  if (r >= 1.0 && std::abs(q - r) < kIntegerWindow && static_cast<long>(r) % 2 == 1) {
    odd_k_ = static_cast<int>((r + 1.0) / 2.0);
  }
}

bool FracOrder::near_odd_integer(double window) const {
  const double r = std::round(q_);
  return r >= 1.0 && static_cast<long>(r) % 2 == 1 && std::abs(q_ - r) < window;
}

double gamma(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at x = " + std::to_string(x));
  }
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("log_gamma: pole at x = " + std::to_string(x));
  }
  return std::lgamma(x);
}

double unit_ball_volume(int n) {
  if (n < 0) throw DomainError("unit_ball_volume: negative dimension");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

double riesz_fourier_constant(int n, double q) {
  require_riesz_range(n, q, "riesz_fourier_constant");
  return std::pow(kPi, 0.5 * n) * gamma(0.5 * (n - q)) * std::pow(2.0, n - q) / gamma(0.5 * q);
}

double laplacian_kernel_constant(int n, double q) {
  require_riesz_range(n, q, "laplacian_kernel_constant");
  return std::pow(kPi, 0.5 * n) * std::pow(2.0, n - q) * gamma(0.5 * (n - q)) /
         (std::pow(2.0 * kPi, n) * gamma(0.5 * q));
}

double example_constant_dnq(int n, double q) {
  require_riesz_range(n, q, "example_constant_dnq");
  const double log_d = -q * std::log(2.0) + 0.5 * q * std::log(static_cast<double>(n)) +
                       log_gamma(0.5 * (n - q)) - log_gamma(0.5 * n) - log_gamma(0.5 * q + 1.0);
  return std::exp(log_d);
}

namespace {

double theorem3_front(int n, double q, double vol_K, double dovr) {
  if (!(vol_K > 0.0)) throw DomainError("theorem3_factor: vol_K must be positive");
  if (!(dovr >= 1.0)) throw DomainError("theorem3_factor: dovr must be >= 1");
  const double denom = (n - q - 1.0) * std::pow(2.0, q) * std::pow(kPi, 0.5 * (q - 1.0)) *
                       gamma(0.5 * (q + 1.0));
  return n / denom * std::pow(vol_K, (q + 1.0) / n) * std::pow(dovr, q + 1.0);
}

}  // namespace

double theorem3_factor(int n, double q, double vol_K, double dovr) {
  if (!(q > -1.0) || !(q < n - 1.0)) {
    throw DomainError("theorem3_factor: requires -1 < q < n-1 (q=" + std::to_string(q) + ")");
  }
  if (FracOrder(q).near_odd_integer(1e-6)) {
    throw OddOrderError("theorem3_factor: q is an odd integer; use theorem3_factor_odd");
  }
  return theorem3_front(n, q, vol_K, dovr);
}

double theorem3_factor_odd(int n, int k, double vol_K, double dovr) {
  const double q = 2.0 * k - 1.0;
  if (k < 1 || !(q < n - 1.0)) {
    throw DomainError("theorem3_factor_odd: requires 1 <= 2k-1 < n-1");
  }
  return theorem3_front(n, q, vol_K, dovr);
}

double eq7_lower_bound(int n, double q, double c) {
  if (n < 1 || q < 0.0 || !(c > 0.0)) throw DomainError("eq7_lower_bound: n >= 1, q >= 0, c > 0");
  return std::pow(c * (q + 1.0) / n, 0.5 * (q + 1.0));
}

double slicing_constant_cn(int n) {
  if (n < 2) throw DomainError("slicing_constant_cn: n >= 2");
  return std::pow(unit_ball_volume(n), (n - 1.0) / n) / unit_ball_volume(n - 1);
}

GammaInequality check_gamma_inequality(double lambda, double mu) {
  if (!(mu >= 0.0) || !(mu <= lambda)) {
    throw DomainError("check_gamma_inequality: requires 0 <= mu <= lambda");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (lambda == 0.0) {
    // Both sides are the Gamma(0) pole; the limit is an equality of infinities.
    return {inf, inf, 0.0, true};
  }
  const double rhs = std::tgamma(lambda);
  if (is_nonpositive_integer(lambda - mu)) {
    return {inf, rhs, inf, true};
  }
  const double log_lhs = mu * std::log(lambda) + std::lgamma(lambda - mu);
  const double log_rhs = std::lgamma(lambda);
  const double log_margin = log_lhs - log_rhs;
  return {std::exp(log_lhs), rhs, log_margin, log_margin >= -1e-10};
}

}  // namespace fracradon
