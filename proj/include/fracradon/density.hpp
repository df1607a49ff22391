#pragma once

// Evaluable functions on R^n with parity, decay and support metadata, plus
// the closed forms (Gaussian structure, radial derivatives, Fourier
// transform) that the analytic paths exploit.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracradon/body.hpp"
#include "fracradon/profile.hpp"

namespace fracradon {

/// amplitude * exp(-x^T Sigma^{-1} x / 2).
struct GaussianForm {
  double amplitude = 1.0;
  std::vector<double> cov;      ///< Sigma, row-major n x n
  std::vector<double> cov_inv;  ///< Sigma^{-1}
  double det = 1.0;
};

class Density {
 public:
  using Fn = std::function<double(std::span<const double>)>;
  /// (j, s) -> d^j/ds^j F(s) for radial densities f(x) = F(|x|^2).
  using RadialFn = std::function<double(int, double)>;

  Density(int n, Fn eval, std::string family);

  /// amplitude * exp(-|x|^2 / (2 sigma^2)).
  static Density gaussian(int n, double sigma = 1.0, double amplitude = 1.0);
  /// N(0, sigma^2 I) probability density.
  static Density normal(int n, double sigma = 1.0);
  static Density gaussian_cov(std::vector<double> cov, double amplitude = 1.0);
  /// Gaussian with standard deviations `sigmas` along the axes of the
  /// orthogonal matrix whose first column is `axis` (Householder frame).
  static Density anisotropic_gaussian(const std::vector<double>& sigmas, const Direction& axis,
                                      double amplitude = 1.0);
  /// amplitude * exp(1 - 1/(1 - |x|^2/T^2)) inside the ball of radius T.
  static Density bump(int n, double T = 1.0, double amplitude = 1.0);
  /// value on K, zero outside.
  static Density indicator(const StarBody& K, double value = 1.0);
  /// f restricted to K (f chi_K).
  static Density restrict_to(const Density& f, const StarBody& K);
  /// c f(a x).
  static Density scaled(const Density& f, double a, double c = 1.0);
  static Density zero(int n);

  int dim() const { return n_; }
  double operator()(std::span<const double> x) const { return eval_(x); }
  const Fn& function() const { return eval_; }
  const std::string& family() const { return family_; }
  bool even() const { return even_; }
  bool nonnegative() const { return nonnegative_; }
  bool isotropic() const { return isotropic_; }
  const Decay& decay() const { return decay_; }
  /// Distance from the origin beyond which f is negligible (or its support radius).
  double cutoff_radius() const;
  /// Characteristic length (sets quadrature and Monte Carlo scales).
  double scale() const { return scale_; }
  const std::optional<StarBody>& support() const { return support_; }
  const std::optional<GaussianForm>& gaussian_form() const { return gaussian_; }
  const RadialFn& radial() const { return radial_; }
  /// Closed-form Fourier transform (real for even densities), may be empty.
  const Fn& fourier() const { return fourier_; }
  /// Closed-form t -> Rf(xi, t) when known.
  std::optional<Profile> closed_profile(const Direction& xi) const;
  /// Smoothness class used for profile derivatives.
  int smoothness() const { return smoothness_; }

  // Mutable metadata for callers assembling custom densities.
  Density& set_even(bool v) { even_ = v; return *this; }
  Density& set_nonnegative(bool v) { nonnegative_ = v; return *this; }
  Density& set_decay(Decay d) { decay_ = d; return *this; }
  Density& set_scale(double s) { scale_ = s; return *this; }
  Density& set_support(const StarBody& K) { support_ = K; return *this; }
  Density& set_smoothness(int m) { smoothness_ = m; return *this; }
  Density& set_fourier(Fn f) { fourier_ = std::move(f); return *this; }
  Density& set_radial(RadialFn r) { radial_ = std::move(r); isotropic_ = static_cast<bool>(radial_); return *this; }
  Density& set_profile_fn(std::function<std::optional<Profile>(const Direction&)> p) {
    profile_fn_ = std::move(p);
    return *this;
  }
  const std::vector<double>& params() const { return params_; }
  Density& set_params(std::vector<double> p) { params_ = std::move(p); return *this; }

 private:
  int n_;
  Fn eval_;
  std::string family_;
  std::vector<double> params_;
  bool even_ = true;
  bool nonnegative_ = true;
  bool isotropic_ = false;
  Decay decay_{DecayKind::gaussian, 1.0};
  double scale_ = 1.0;
  int smoothness_ = 64;
  std::optional<StarBody> support_;
  std::optional<GaussianForm> gaussian_;
  RadialFn radial_;
  Fn fourier_;
  std::function<std::optional<Profile>(const Direction&)> profile_fn_;
};

/// Cholesky-based inverse and determinant of a symmetric positive definite matrix.
GaussianForm make_gaussian_form(std::vector<double> cov, double amplitude);

}  // namespace fracradon
