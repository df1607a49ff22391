#pragma once

// The example construction: h = Delta^{-q/2} f on a grid, the rescaled
// probability density g on a volume-one body D, the lower-bound certificate
// for int_{2K} h, and the convolution lemma on step functions.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracradon/body.hpp"
#include "fracradon/density.hpp"
#include "fracradon/field.hpp"
#include "fracradon/report.hpp"

namespace fracradon {

struct ConstructionGrid {
  double L = 8.0;
  int M = 64;
  /// Spectral (free-space split) by default; `use_convolution` selects the
  /// real-space Riesz convolution instead.
  bool use_convolution = false;
};

struct NegativeOrderDensity {
  GridField field;
  Density density;      ///< interpolated, supported in the box
  double clamp_mass;    ///< mass removed by clamping negative values to 0
  double total_mass;    ///< grid integral after clamping
  double min_value;     ///< most negative value before clamping
  double peak;
  std::string method;
};

/// h = Delta^{-q/2} f sampled on the grid, 0 <= q < n (q = 0 returns f).
/// Negative values from ringing are clamped to 0; a clamped mass above 1e-6
/// of the total throws BudgetError.
NegativeOrderDensity negative_order_density(const Density& f, double q,
                                            const ConstructionGrid& grid = {});

struct ConstructionOptions {
  ConstructionGrid grid;
  /// Use Vol(2K)^{-1/n} (2K) for D. For every star body this coincides with
  /// Vol(K)^{-1/n} K; the switch only changes the recorded label.
  bool consistent_scaling = false;
  long mc_samples = 1000000;
  std::uint64_t seed = 0;
  double rel_tol = 1e-5;
};

struct ConstructionResult {
  StarBody K;
  StarBody D;
  Density f;
  NegativeOrderDensity h;
  Density g;
  double q = 0.0;
  double a = 0.0;         ///< Vol(2K)^{1/n}, the argument scale of g
  double Z = 0.0;         ///< int_D h(a x) dx
  double volume_K = 0.0;
  double volume_D = 0.0;
  double mass_D = 0.0;    ///< int_D g by quadrature
  double mass_D_mc = 0.0; ///< Monte Carlo cross-check
  double mass_D_mc_stderr = 0.0;
  std::string scaling;
  std::vector<std::string> notes;

  /// R(Delta^{q/2} g)(xi, 0) = a^{q-(n-1)} Rf(xi, 0) / Z, the fractional
  /// derivative of g's section function in the normalization used by verify.
  double radq_g(const Direction& xi) const;
  /// Normalization checks (Vol(D) = 1, int_D g = 1) within `tol`.
  VerificationReport normalization_report(double tol = 1e-3) const;
};

/// D = Vol(K)^{-1/n} K and g(x) = h(Vol(2K)^{1/n} x) / Z with Z chosen so that
/// int_D g = 1. Requires K symmetric, f even and nonnegative, 0 <= q < n - 1,
/// and 2K inside the grid box.
ConstructionResult build_example(const StarBody& K, const Density& f, double q,
                                 const ConstructionOptions& opt = {});

/// int_{2K} h >= c_{n,q} (n omega_n n^{q/2} / q) int_K f, with the left side by
/// Monte Carlo. Requires sqrt(n) B inside K and 0 < q < n.
VerificationReport lower_bound_certificate(const StarBody& K, const Density& f, double q,
                                           const ConstructionOptions& opt = {});

/// Axis-aligned box, one [lo, hi] pair per axis.
using Box = std::vector<std::pair<double, double>>;

/// int_{A+B} f*g >= int_A f * int_B g for nonnegative step functions given as
/// cell values on a common grid (n <= 2). All integrals are exact for step
/// functions; extra carries the mass of f*g outside supp f + supp g.
VerificationReport check_convolution_lemma(const GridField& f, const GridField& g, const Box& A,
                                           const Box& B);

struct Surrogate {
  StarBody K;
  Density f;
  double sigma;
  double mass_K;  ///< int_K f by quadrature (Monte Carlo for n >= 4)
  std::string family;
};

/// Stand-in pair with sqrt(n) B inside K and an even Gaussian density
/// N(0, sigma^2 I), sigma chosen so that int_K f = 0.95. n <= 6.
Surrogate surrogate_example(int n, const std::string& family);

/// R(h(a .))(xi, t) = a^{-(n-1)} Rh(xi, a t) on an anisotropic Gaussian by
/// hyperplane quadrature, and phi_a^{(q)}(0) = a^q phi^{(q)}(0) on the
/// Gaussian profile. One report per identity.
std::vector<VerificationReport> check_scaling_identities(int n, double q, double a,
                                                         double tol = 1e-6);

}  // namespace fracradon
