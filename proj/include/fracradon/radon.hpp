#pragma once

// Hyperplane integrals Rf(xi, t), their t-profiles, fractional derivatives of
// those profiles, and the grid path through the fractional Laplacian.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracradon/density.hpp"
#include "fracradon/field.hpp"
#include "fracradon/profile.hpp"
#include "fracradon/sphere.hpp"

namespace fracradon {

enum class RadonMethod { automatic, quadrature, monte_carlo };

struct RadonOptions {
  RadonMethod method = RadonMethod::automatic;
  double rel_tol = 1e-10;
  long samples = 400000;  ///< Monte Carlo samples
  std::uint64_t seed = 0;
};

struct RadonValue {
  double value = 0.0;
  double quad_error = 0.0;
  double std_error = 0.0;
  std::string method;  ///< closed_form, radial, polar_quadrature or monte_carlo
};

/// Rf(xi, t) with error estimates. Automatic order: closed-form profile,
/// radial reduction, polar quadrature in the hyperplane (n <= 4), Monte Carlo.
/// Quadrature throws BudgetError when the plane meets the support away from
/// its centre point tξ (use Monte Carlo there).
RadonValue radon_value(const Density& f, const Direction& xi, double t,
                       const RadonOptions& opt = {});
double radon(const Density& f, const Direction& xi, double t, const RadonOptions& opt = {});

/// t -> Rf(xi, t). Closed forms are returned directly; radial densities carry
/// exact even-order derivatives; otherwise evaluations are memoized.
Profile radon_profile(const Density& f, const Direction& xi, const RadonOptions& opt = {});

/// Fractional derivative of order q at t = 0 of the profile; at odd integer q
/// the odd-order quantity.
double radon_frac_deriv(const Density& f, const Direction& xi, double q,
                        const RadonOptions& opt = {});

/// The same quantity in the normalization that equals R(Delta^{q/2} f)(xi, 0):
/// divided by cos(pi q / 2) away from odd integers.
double radon_frac_deriv_theorem(const Density& f, const Direction& xi, double q,
                                const RadonOptions& opt = {});

/// Grid ladder for the Laplacian path. The field is sampled on [-L, L]^n with
/// L = M * spacing / 2; with `richardson`, the (L, M) and (2L, 2M) values are
/// combined to cancel the leading L^{-(1+q)} truncation term (the field
/// decays like |x|^{-n-q} for every q > -1).
struct SectionGrid {
  int M = 64;
  double spacing = 0.0;  ///< 0 selects f.scale() / 4
  bool richardson = true;
  LaplacianMode mode = LaplacianMode::automatic;
};

struct SectionValue {
  double section = 0.0;  ///< R(Delta^{q/2} f)(xi, 0)
  double literal = 0.0;  ///< cos(pi q / 2) * section, the plain fractional derivative
  double coarse = 0.0;   ///< raw value on (L, M)
  double fine = 0.0;     ///< raw value on (2L, 2M), when extrapolated
  double half_width = 0.0;
  int points = 0;
  double imag_residue = 0.0;
  double truncation = 0.0;  ///< estimated mass fraction outside the coarse box
};

/// Samples f rotated so that xi -> e_1, applies the fractional Laplacian on the
/// grid, and integrates the section x_1 = 0. Rejects odd integer q.
SectionValue radon_frac_deriv_via_laplacian(const Density& f, const Direction& xi, double q,
                                            const SectionGrid& grid = {});

struct SliceGrid {
  double L = 8.0;
  int M = 64;
  /// Evaluate the profile by hyperplane quadrature even when a closed form exists.
  bool force_quadrature = false;
};

/// max over the frequency nodes z of |int Rf(xi, t) e^{-izt} dt - fhat(z xi)|,
/// divided by max |fhat|. Requires a closed-form Fourier transform.
double fourier_slice_residual(const Density& f, const Direction& xi, const SliceGrid& grid = {});

struct DirectionSearch {
  int mesh = 0;  ///< 0 selects default_mesh_size(n)
  bool ascent = true;
  int max_iterations = 30;
  std::uint64_t seed = 0;
};

struct DirectionMax {
  Direction best;
  double value = 0.0;
  double mesh_min = 0.0;  ///< smallest mesh value (spread diagnostics)
  double mesh_best = 0.0;
  int mesh_size = 0;
  std::vector<double> trace;  ///< accepted ascent values
};

/// Mesh search plus projected-gradient ascent; the result is a lower bound on
/// the true maximum.
DirectionMax max_over_directions(int n, const std::function<double(const Direction&)>& value,
                                 const DirectionSearch& search = {});

/// max over xi of the fractional derivative (theorem normalization when
/// `theorem` is set). Isotropic densities are evaluated at e_1 only.
DirectionMax max_over_directions(const Density& f, double q, const DirectionSearch& search = {},
                                 bool theorem = true, const RadonOptions& opt = {});

}  // namespace fracradon
