#pragma once

// Gamma-function constants used throughout the toolkit: Riesz/Fourier
// constants, the fractional-Laplacian kernel constant, the example constant
// d_{n,q}, the slicing-theorem front factor and the Gamma inequality.

#include <numbers>

namespace fracradon {

inline constexpr double kPi = std::numbers::pi;

/// Integers closer than this are treated as exact (poles, odd orders).
inline constexpr double kIntegerWindow = 1e-12;

/// Offset used when a caller asks for a q -> 0+ limit.
inline constexpr double kQZeroLimit = 1e-8;

/// Order of differentiation / Laplacian. Tracks whether q is an odd
/// positive integer 2k-1, which needs the renormalized odd pathway.
class FracOrder {
 public:
  explicit FracOrder(double q);

  double value() const { return q_; }
  bool is_odd_integer() const { return odd_k_ > 0; }
  /// k with q = 2k - 1; 0 when q is not an odd integer.
  int odd_k() const { return odd_k_; }
  /// True when q lies within `window` of an odd positive integer.
  bool near_odd_integer(double window) const;

 private:
  double q_;
  int odd_k_ = 0;
};

/// Gamma(x); throws PoleError at nonpositive integers.
double gamma(double x);

/// log|Gamma(x)|; throws PoleError at nonpositive integers.
double log_gamma(double x);

/// Volume of the unit Euclidean ball in R^n.
double unit_ball_volume(int n);

/// Surface area of S^{n-1}, i.e. n * unit_ball_volume(n).
double unit_sphere_area(int n);

/// Constant C with (|x|^{-q})^(xi) = C |xi|^{q-n}, 0 < q < n.
double riesz_fourier_constant(int n, double q);

/// c_{n,q}: Delta^{-q/2} f = c_{n,q} |x|^{q-n} * f, 0 < q < n.
double laplacian_kernel_constant(int n, double q);

/// d_{n,q} = 2^{-q} n^{q/2} Gamma((n-q)/2) / (Gamma(n/2) Gamma(q/2+1)), 0 < q < n.
double example_constant_dnq(int n, double q);

/// Front factor of the fractional slicing inequality:
///   n / ((n-q-1) 2^q pi^{(q-1)/2} Gamma((q+1)/2)) * vol_K^{(q+1)/n} * dovr^{q+1}.
/// Requires -1 < q < n-1 and q not an odd integer.
double theorem3_factor(int n, double q, double vol_K, double dovr);

/// Same factor evaluated at an odd integer q = 2k-1, used with the
/// renormalized odd-order quantity.
double theorem3_factor_odd(int n, int k, double vol_K, double dovr);

/// Right-hand side (c (q+1) / n)^{(q+1)/2} of the normalized lower bound.
double eq7_lower_bound(int n, double q, double c);

/// c_n = |B_2^n|^{(n-1)/n} / |B_2^{n-1}|_{n-1}.
double slicing_constant_cn(int n);

struct GammaInequality {
  double lhs;  ///< lambda^mu Gamma(lambda - mu); +inf at the mu = lambda pole
  double rhs;  ///< Gamma(lambda)
  double log_margin;  ///< log(lhs) - log(rhs)
  bool holds;
};

/// lambda^mu Gamma(lambda - mu) >= Gamma(lambda) for 0 <= mu <= lambda,
/// judged in log space with relative tolerance 1e-10.
GammaInequality check_gamma_inequality(double lambda, double mu);

}  // namespace fracradon
