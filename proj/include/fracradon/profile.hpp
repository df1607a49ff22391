#pragma once

// Even one-dimensional profiles t -> phi(t), t >= 0, and fractional
// derivatives of order q at 0 (regularized analytic continuation), plus the
// renormalized odd-order quantity.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracradon/constants.hpp"

namespace fracradon {

enum class DecayKind { gaussian, exponential, polynomial, compact };

/// Tail behaviour of a profile. `param` is sigma (gaussian), rate
/// (exponential), alpha with phi ~ t^-alpha (polynomial) or T (compact).
struct Decay {
  DecayKind kind = DecayKind::gaussian;
  double param = 1.0;

  /// Point beyond which the profile is below ~1e-16 of its scale
  /// (infinite for polynomial decay).
  double cutoff() const;
  std::string describe() const;
};

class Profile {
 public:
  using Fn = std::function<double(double)>;
  /// k -> phi^{(k)}(0), exact. Empty when only finite differences are available.
  using DerivFn = std::function<double(int)>;

  Profile(Fn eval, int smoothness_m, Decay decay, bool is_even, double scale,
          std::string family, DerivFn derivative = {});

  static Profile gaussian(double sigma = 1.0, double amplitude = 1.0);
  static Profile exponential(double rate = 1.0, double amplitude = 1.0);
  static Profile cauchy(double gamma = 1.0, double amplitude = 1.0);
  /// amplitude * exp(1 - 1/(1 - (t/T)^2)) on [0, T), zero beyond.
  static Profile bump(double T = 1.0, double amplitude = 1.0);
  /// value on [0, T], zero beyond.
  static Profile constant_compact(double T = 1.0, double value = 1.0);
  /// Uniformly spaced samples starting at t = 0 with a cubic B-spline
  /// interpolant; zero beyond the last node. Smoothness is capped at 2.
  static Profile tabulated(const std::vector<double>& t, const std::vector<double>& phi,
                           bool is_even = true);
  static Profile zero();

  double operator()(double t) const { return eval_(t); }
  int smoothness_m() const { return smoothness_m_; }
  const Decay& decay() const { return decay_; }
  bool is_even() const { return is_even_; }
  /// Characteristic length near the origin (sets finite-difference steps).
  double scale() const { return scale_; }
  const std::string& family() const { return family_; }
  bool has_exact_derivatives() const { return static_cast<bool>(derivative_); }
  /// Exact derivative at 0; requires has_exact_derivatives().
  double exact_derivative(int k) const;

  /// t -> phi(a t).
  Profile scaled(double a) const;
  /// t -> c phi(t).
  Profile times(double c) const;

 private:
  Fn eval_;
  int smoothness_m_;
  Decay decay_;
  bool is_even_;
  double scale_;
  std::string family_;
  DerivFn derivative_;
};

/// Finite-difference derivatives beyond this order must be supplied exactly.
inline constexpr int kMaxFiniteDifferenceOrder = 6;

/// phi^{(k)}(0), k = 0..m-1. Exact when the profile carries derivatives,
/// otherwise Ridders-extrapolated finite differences (central on the even
/// extension for even profiles, forward otherwise). Odd orders are exactly 0
/// for even profiles.
std::vector<double> taylor_coeffs_at_zero(const Profile& phi, int m);

/// Fractional derivative of order q at 0 by the m-term regularized formula.
/// m <= 0 selects the default floor(q) + 2. Even integer q returns
/// (-1)^q phi^{(q)}(0); q within 1e-6 of an odd integer throws OddOrderError.
double frac_derivative_at_zero(const Profile& phi, double q, int m = 0);

/// (1/Gamma(-q)) int_0^inf t^{-1-q} phi(t) dt for -1 < q < 0, without
/// regularization. Independent oracle for the continuation.
double frac_derivative_unregularized(const Profile& phi, double q);

/// (-1)^k (2k-1)! int_0^inf t^{-2k} (phi(t) - sum_{j<k} phi^{(2j)}(0) t^{2j}/(2j)!) dt.
/// Requires an even profile.
double frac_derivative_odd(const Profile& phi, int k);

/// phi^{(q)}(0) / cos(pi q / 2) for non-odd q; the odd-order quantity at
/// q = 2k-1. This is the normalization in which the fractional derivative of
/// the section function equals the section of the fractional Laplacian.
double frac_derivative_theorem(const Profile& phi, double q);

/// Closed form 2^{-q/2-1} Gamma(-q/2) / Gamma(-q) for phi(t) = exp(-t^2/2).
double gaussian_frac_derivative_closed_form(double q);

}  // namespace fracradon
