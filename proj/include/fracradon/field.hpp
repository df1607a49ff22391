#pragma once

// Grid-sampled functions on [-L, L]^n (cell-centred nodes), the continuous
// Fourier transform approximated on the grid, fractional Laplacians and the
// real-space Riesz-potential convolution.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fracradon/density.hpp"
#include "fracradon/report.hpp"

namespace fracradon {

/// Real samples at nodes x_j = -L + (j + 1/2) delta, delta = 2L/M, stored
/// row-major with axis 0 slowest.
class GridField {
 public:
  GridField(int n, double L, int M);

  int dim() const { return n_; }
  double half_width() const { return L_; }
  int points() const { return M_; }
  double delta() const { return 2.0 * L_ / M_; }
  double coord(int j) const { return -L_ + (j + 0.5) * delta(); }
  long size() const { return static_cast<long>(data_.size()); }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }
  double& operator[](long i) { return data_[i]; }
  double operator[](long i) const { return data_[i]; }
  /// Node coordinates of flat index i.
  void node(long i, std::span<double> x) const;

 private:
  int n_;
  double L_;
  int M_;
  std::vector<double> data_;
};

/// Complex samples on the same kind of grid. After a transform, L is the
/// half-width of the frequency window, M pi / (2 L_space).
class ComplexField {
 public:
  ComplexField(int n, double L, int M);
  explicit ComplexField(const GridField& f);

  int dim() const { return n_; }
  double half_width() const { return L_; }
  int points() const { return M_; }
  double delta() const { return 2.0 * L_ / M_; }
  double coord(int j) const { return -L_ + (j + 0.5) * delta(); }
  long size() const { return static_cast<long>(data_.size()); }
  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

 private:
  int n_;
  double L_;
  int M_;
  std::vector<std::complex<double>> data_;
};

/// Real part plus the largest |imag| relative to the largest |real|.
GridField real_part(const ComplexField& f, double* imag_residue = nullptr);

/// Samples f at the nodes. With `check_truncation`, throws BudgetError when
/// the decay metadata puts more than 1e-10 of the mass outside the box.
GridField sample(const Density& f, double L, int M, bool check_truncation = true);

/// Estimated fraction of mass outside [-L, L]^n from decay metadata.
double truncation_fraction(const Density& f, double L);

/// fhat(xi) = int f e^{-i(x, xi)} dx at the nodes xi_m = (m - M/2 + 1/2) pi / L.
ComplexField fourier(const GridField& f);
ComplexField fourier(const ComplexField& f);
/// Exact discrete inverse of fourier(), carrying (2 pi)^{-n}.
ComplexField inv_fourier(const ComplexField& F);

enum class LaplacianMode { automatic, periodic, free_space };

struct LaplacianInfo {
  std::string mode;
  double imag_residue = 0.0;
  double zero_frequency_multiplier = 0.0;  ///< cell average used at the DC nodes (q < 0)
  double split_scale = 0.0;                ///< s0 of the free-space split
};

/// Delta^{q/2} f = (|xi|^q fhat)^vee for q > -n. Periodic mode applies the
/// multiplier on the grid (DC nodes use the cell average of |xi|^q when
/// q < 0). Free-space mode (default for q < 0) splits the multiplier as
/// |xi|^q psi + |xi|^q (1 - psi), psi = exp(-|xi|^4 / (2 s0^4)); the first
/// part is an aperiodic real-space convolution, the second a periodic multiplier.
GridField fractional_laplacian(const GridField& f, double q,
                               LaplacianMode mode = LaplacianMode::automatic,
                               LaplacianInfo* info = nullptr);

enum class SingularWeight { zeta_corrected, cell_integral };

/// c_{n,q} |x|^{q-n} * f by zero-padded FFT convolution, 0 < q < n, n <= 3.
/// The origin weight is the zeta-corrected trapezoid value (default) or the
/// analytic integral of |x|^{q-n} over the central cell.
GridField riesz_convolution(const GridField& f, double q,
                            SingularWeight weight = SingularWeight::zeta_corrected);

/// Same sum evaluated directly in O(N^2) (reference for tests and benchmarks).
GridField riesz_convolution_direct(const GridField& f, double q,
                                   SingularWeight weight = SingularWeight::zeta_corrected,
                                   bool parallel = true);

/// Epstein zeta Z_n(s) = sum_{k in Z^n \ 0} |k|^{-s}, analytically continued, s != 0, n.
double epstein_zeta(int n, double s);

/// int_{[0,1]^n} |u|^p du for p > -n.
double unit_cube_power_integral(int n, double p);

/// int f over the grid (sum times delta^n).
double grid_integral(const GridField& f);

/// Tensor Lagrange interpolation with `order` points per axis; 0 outside the box.
double interpolate(const GridField& f, std::span<const double> x, int order = 4);

/// Grid-backed density (interpolated), supported in the box.
Density grid_density(const GridField& f, int order = 4);

/// int over the hyperplane x_0 = 0 of the field: trapezoid sum over the
/// remaining axes, trigonometric interpolation across axis 0.
double axis_section(const GridField& f);

/// Checks <|.|^{-q}, phihat> = <C |.|^{q-n}, phi> for phi = exp(-|x|^2/2)
/// with both pairings as radial integrals.
VerificationReport verify_riesz_pair(int n, double q, double tol);

}  // namespace fracradon
