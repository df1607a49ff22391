#pragma once

// Star bodies given by radial functions, with Minkowski functional, volume,
// dilation, radial metric and integration over the body.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracradon/sphere.hpp"

namespace fracradon {

enum class BodyFamily { ball, cube, lp_ball, ellipsoid, custom, tabulated };

std::string to_string(BodyFamily f);

class StarBody {
 public:
  /// Unit vector -> rho_K(u) > 0.
  using RadialFn = std::function<double(std::span<const double>)>;

  static StarBody ball(int n, double r = 1.0);
  /// Cube [-a, a]^n (side 2a).
  static StarBody cube(int n, double a = 1.0);
  static StarBody lp_ball(int n, double p, double r = 1.0);
  static StarBody ellipsoid(std::vector<double> axes);
  /// `circumradius` must bound rho from above; convexity is an input assertion.
  static StarBody custom(int n, RadialFn rho, bool symmetric, double circumradius,
                         std::string name = "custom");
  /// Radial values on a direction mesh. n = 2 interpolates linearly in angle,
  /// n >= 3 uses the nearest mesh direction.
  static StarBody tabulated(const std::vector<Direction>& dirs, const std::vector<double>& rho,
                            bool symmetric);

  int dim() const { return n_; }
  BodyFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  bool symmetric() const { return symmetric_; }
  bool convex_asserted() const { return convex_; }
  /// Upper bound on rho over the sphere.
  double circumradius() const { return circumradius_; }

  /// rho_K(u) for a unit vector u.
  double rho(std::span<const double> u) const { return rho_(u); }
  double rho(const Direction& u) const { return rho_(u.span()); }
  /// ||x||_K = rho_K(x)^{-1}, homogeneous of degree 1; 0 at the origin.
  double gauge(std::span<const double> x) const;
  bool contains(std::span<const double> x) const { return gauge(x) <= 1.0; }

  /// lam K.
  StarBody dilated(double lam) const;

  /// Closed-form volume when the family has one.
  std::optional<double> exact_volume() const;

 private:
  StarBody() = default;
  int n_ = 0;
  BodyFamily family_ = BodyFamily::custom;
  std::string name_;
  std::vector<double> params_;
  bool symmetric_ = true;
  bool convex_ = true;
  double circumradius_ = 1.0;
  double scale_ = 1.0;  // applied by dilated(); rho = scale * base_rho
  RadialFn rho_;
  std::function<double(std::span<const double>)> gauge_;  // family shortcut, may be empty
};

double minkowski_functional(const StarBody& K, std::span<const double> x);

enum class VolumeMethod { radial_quadrature, monte_carlo };

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  ///< Monte Carlo standard error (0 for quadrature)
  double quad_error = 0.0;  ///< quadrature error estimate
  long samples = 0;
  std::string method;
};

/// |K| = (1/n) int_{S^{n-1}} rho^n. Quadrature is refused for n > 4.
Estimate volume(const StarBody& K, VolumeMethod method = VolumeMethod::radial_quadrature,
                long samples = 1000000, std::uint64_t seed = 0);

/// Integral of g over S^{n-1} (surface measure) by nested adaptive
/// quadrature, n <= 4.
Estimate sphere_integral(int n, const std::function<double(std::span<const double>)>& g,
                         double rel_tol = 1e-10);

/// int_K f by polar quadrature, radial extent min(rho_K(u), cutoff), n <= 4.
Estimate integrate_over_body(const StarBody& K, const std::function<double(std::span<const double>)>& f,
                             double cutoff = 1e300, double rel_tol = 1e-9);

/// int_K f = omega_n E[rho(U)^n f(rho(U) V^{1/n} U)] with U uniform on the
/// sphere and V uniform on [0,1]. Chunked with derived seeds; the chunk sums
/// are reduced in chunk order, so results do not depend on the thread count.
Estimate integrate_over_body_mc(const StarBody& K,
                                const std::function<double(std::span<const double>)>& f,
                                long samples, std::uint64_t seed);

StarBody dilate(const StarBody& K, double lam);

struct RadialDistance {
  double value;
  int mesh_size;
};

/// sup_u |rho_K(u) - rho_L(u)| over a deterministic mesh.
RadialDistance radial_distance(const StarBody& K, const StarBody& L, int mesh_size = 0,
                               std::uint64_t seed = 0);

/// min over the mesh of rho_K >= r.
bool contains_scaled_ball(const StarBody& K, double r, int mesh_size = 0, std::uint64_t seed = 0);

/// Default mesh size per dimension (n=2: 720, n=3: 4000, n>=4: 20000).
int default_mesh_size(int n);

}  // namespace fracradon
