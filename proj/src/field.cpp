#include "fracradon/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/kernels.hpp"
#include "fracradon/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/expint.hpp>

namespace fracradon {

namespace {

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_grid(int n, double L, int M) {
  if (n < 1 || n > 4) throw DomainError("grid: dimension must be in [1, 4]");
  if (!(L > 0.0)) throw DomainError("grid: half-width must be positive");
  if (M < 2 || M % 2) throw DomainError("grid: points per axis must be even and >= 2");
  if (ipow(M, n) > (1L << 28)) throw DomainError("grid: too many nodes");
}

std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

// In-place n-dimensional DFT of side M (sign -1 forward, +1 backward).
void dft_inplace(int n, int M, std::complex<double>* data, int sign) {
  std::vector<int> dims(n, M);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(data);
    plan = fftw_plan_dft(n, dims.data(), p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

// Centered DFT with the node offsets of the cell-centred grid:
// out_m = sum_j in_j exp(sign * 2 pi i a_j b_m / M), a_j = j - M/2 + 1/2.
void centered_dft(int n, int M, std::vector<std::complex<double>>& data, int sign) {
  const double c = 0.5 - 0.5 * M;
  std::vector<std::complex<double>> tw(M);
  for (int k = 0; k < M; ++k) tw[k] = std::polar(1.0, sign * 2.0 * kPi * c * k / M);
  apply_axis_twiddle_omp(n, M, data.data(), tw.data());
  dft_inplace(n, M, data.data(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  apply_axis_twiddle_omp(n, M, data.data(), tw.data());
  const std::complex<double> phase = std::polar(1.0, sign * 2.0 * kPi * n * c * c / M);
  const long N = static_cast<long>(data.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < N; ++i) data[i] *= phase;
}

// |xi|^2 at flat index i of a centered frequency grid with spacing dxi.
double freq_norm2(long i, int n, int M, double dxi) {
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    const double z = (static_cast<double>(i % M) - 0.5 * M + 0.5) * dxi;
    s += z * z;
    i /= M;
  }
  return s;
}

bool is_dc_node(long i, int n, int M) {
  for (int a = 0; a < n; ++a) {
    const long m = i % M;
    if (m != M / 2 && m != M / 2 - 1) return false;
    i /= M;
  }
  return true;
}

QuadOptions opts(double rel, int max_int = 2000) {
  QuadOptions o;
  o.rel_tol = rel;
  o.abs_tol = 1e-300;
  o.max_intervals = max_int;
  return o;
}

// Radial profile Omega_n(s) = Gamma(n/2) (2/s)^{n/2-1} J_{n/2-1}(s) of the
// Fourier transform of the uniform measure on S^{n-1}.
double omega_n(int n, double s) {
  if (n == 1) return std::cos(s);
  if (n == 3) return std::abs(s) < 1e-6 ? 1.0 - s * s / 6.0 : std::sin(s) / s;
  const double nu = 0.5 * n - 1.0;
  if (std::abs(s) < 1e-8) return 1.0;
  return std::tgamma(0.5 * n) * std::pow(2.0 / s, nu) * std::cyl_bessel_j(nu, s);
}

// int_0^R rho^alpha h(rho) d rho with alpha > -1, via rho = v^{1/(alpha+1)}.
template <class H>
double power_weighted(double alpha, double R, H&& h, double rel) {
  const double beta = 1.0 / (alpha + 1.0);
  const double V = std::pow(R, alpha + 1.0);
  auto g = [&](double v) { return h(std::pow(v, beta)); };
  std::vector<double> br;
  for (int i = 0; i <= 16; ++i) br.push_back(V * i / 16.0);
  return beta * integrate_pieces(g, br, opts(rel, 4000)).value;
}

}  // namespace

GridField::GridField(int n, double L, int M) : n_(n), L_(L), M_(M) {
  check_grid(n, L, M);
  data_.assign(ipow(M, n), 0.0);
}

void GridField::node(long i, std::span<double> x) const {
  for (int a = n_ - 1; a >= 0; --a) {
    x[a] = coord(static_cast<int>(i % M_));
    i /= M_;
  }
}

ComplexField::ComplexField(int n, double L, int M) : n_(n), L_(L), M_(M) {
  check_grid(n, L, M);
  data_.assign(ipow(M, n), 0.0);
}

ComplexField::ComplexField(const GridField& f)
    : n_(f.dim()), L_(f.half_width()), M_(f.points()), data_(f.data().begin(), f.data().end()) {}

GridField real_part(const ComplexField& f, double* imag_residue) {
  GridField out(f.dim(), f.half_width(), f.points());
  double max_re = 0.0;
  double max_im = 0.0;
  for (long i = 0; i < f.size(); ++i) {
    out[i] = f.data()[i].real();
    max_re = std::max(max_re, std::abs(f.data()[i].real()));
    max_im = std::max(max_im, std::abs(f.data()[i].imag()));
  }
  if (imag_residue) *imag_residue = max_re > 0.0 ? max_im / max_re : max_im;
  return out;
}

double truncation_fraction(const Density& f, double L) {
  const int n = f.dim();
  const Decay& d = f.decay();
  if (f.support()) return f.support()->circumradius() <= L ? 0.0 : 1.0;
  switch (d.kind) {
    case DecayKind::compact:
      return d.param <= L ? 0.0 : 1.0;
    case DecayKind::gaussian:
      return std::min(1.0, n * std::erfc(L / (d.param * std::sqrt(2.0))));
    case DecayKind::exponential:
      return std::min(1.0, n * std::pow(1.0 + d.param * L, n) * std::exp(-d.param * L));
    case DecayKind::polynomial:
      return d.param > n ? std::min(1.0, std::pow(L / f.scale(), n - d.param)) : 1.0;
  }
  return 1.0;
}

GridField sample(const Density& f, double L, int M, bool check_truncation) {
  const int n = f.dim();
  GridField out(n, L, M);
  if (check_truncation) {
    const double frac = truncation_fraction(f, L);
    if (frac > 1e-10) {
      throw BudgetError("sample: estimated truncated mass fraction " + std::to_string(frac) +
                        " exceeds 1e-10; enlarge L");
    }
  }
  map_indices_omp(out.size(), [&](long i) {
    Scratch x;
    out.node(i, std::span<double>(x.data(), n));
    return f(std::span<const double>(x.data(), n));
  }, out.data().data());
  return out;
}

ComplexField fourier(const ComplexField& f) {
  const int n = f.dim();
  const int M = f.points();
  ComplexField out(n, M * kPi / (2.0 * f.half_width()), M);
  out.data() = f.data();
  centered_dft(n, M, out.data(), -1);
  const double scale = std::pow(f.delta(), n);
  for (auto& v : out.data()) v *= scale;
  return out;
}

ComplexField fourier(const GridField& f) { return fourier(ComplexField(f)); }

ComplexField inv_fourier(const ComplexField& F) {
  const int n = F.dim();
  const int M = F.points();
  ComplexField out(n, M * kPi / (2.0 * F.half_width()), M);
  out.data() = F.data();
  centered_dft(n, M, out.data(), +1);
  const double scale = std::pow(F.delta() / (2.0 * kPi), n);
  for (auto& v : out.data()) v *= scale;
  return out;
}

double unit_cube_power_integral(int n, double p) {
  if (!(p > -n)) throw DomainError("unit_cube_power_integral: requires p > -n");
  // Splitting the cube into n pyramids over the faces u_k = 1:
  // int = n/(p+n) int_{[0,1]^{n-1}} (1 + |v|^2)^{p/2} dv.
  std::function<double(int, double)> rec = [&](int d, double s2) -> double {
    if (d == 0) return std::pow(1.0 + s2, 0.5 * p);
    auto g = [&](double v) { return rec(d - 1, s2 + v * v); };
    return integrate(g, 0.0, 1.0, opts(1e-12, 200)).value;
  };
  return n / (p + n) * rec(n - 1, 0.0);
}

namespace {

GridField periodic_laplacian(const GridField& f, double q, LaplacianInfo* info,
                             double split_scale) {
  const int n = f.dim();
  const int M = f.points();
  auto F = fourier(f);
  const double dxi = F.delta();
  const double dc = q < 0.0 ? std::pow(dxi, q) * unit_cube_power_integral(n, q) : 0.0;
  std::vector<double> mult(F.size());
  const double s4 = std::pow(split_scale, 4);
  for (long i = 0; i < F.size(); ++i) {
    const double r2 = freq_norm2(i, n, M, dxi);
    if (split_scale > 0.0) {
      mult[i] = std::pow(r2, 0.5 * q) * (-std::expm1(-0.5 * r2 * r2 / s4));
    } else if (q < 0.0 && is_dc_node(i, n, M)) {
      mult[i] = dc;
    } else {
      mult[i] = q == 0.0 ? 1.0 : std::pow(r2, 0.5 * q);
    }
  }
  apply_multiplier_omp(F.data().data(), mult.data(), mult.size());
  auto u = inv_fourier(F);
  double residue = 0.0;
  GridField out = real_part(u, &residue);
  if (residue > 1e-10) {
    throw BudgetError("fractional_laplacian: imaginary residue " + std::to_string(residue) +
                      " signals aliasing; refine the grid");
  }
  if (info) {
    info->imag_residue = residue;
    info->zero_frequency_multiplier = dc;
  }
  return out;
}

// Zero-padded linear convolution out = delta^n sum_y K(x - y) f(y), with the
// kernel given on integer offsets by kernel_of(offset index vector).
GridField fft_linear_convolution(const GridField& f, const std::vector<double>& kernel_side) {
  const int n = f.dim();
  const int M = f.points();
  const int P = 2 * M;
  const long NP = ipow(P, n);
  const long side = 2L * M - 1;
  std::vector<std::complex<double>> a(NP, 0.0), k(NP, 0.0);
  for (long i = 0; i < f.size(); ++i) {
    long r = i, idx = 0, stride = 1;
    for (int d = n - 1; d >= 0; --d) {
      idx += (r % M) * stride;
      r /= M;
      stride *= P;
    }
    a[idx] = f[i];
  }
  for (long i = 0; i < static_cast<long>(kernel_side.size()); ++i) {
    long r = i, idx = 0, stride = 1;
    for (int d = n - 1; d >= 0; --d) {
      const long o = r % side - (M - 1);
      r /= side;
      idx += ((o + P) % P) * stride;
      stride *= P;
    }
    k[idx] = kernel_side[i];
  }
  dft_inplace(n, P, a.data(), FFTW_FORWARD);
  dft_inplace(n, P, k.data(), FFTW_FORWARD);
  for (long i = 0; i < NP; ++i) a[i] *= k[i];
  dft_inplace(n, P, a.data(), FFTW_BACKWARD);
  GridField out(n, f.half_width(), M);
  const double scale = std::pow(f.delta(), n) / static_cast<double>(NP);
  for (long i = 0; i < out.size(); ++i) {
    long r = i, idx = 0, stride = 1;
    for (int d = n - 1; d >= 0; --d) {
      idx += (r % M) * stride;
      r /= M;
      stride *= P;
    }
    out[i] = a[idx].real() * scale;
  }
  return out;
}

// Kernel on the offset lattice [-(M-1), M-1]^n from a table keyed by |offset|^2.
std::vector<double> radial_kernel_table(int n, int M, const std::function<double(long)>& value_of_k2) {
  const long side = 2L * M - 1;
  const long total = ipow(side, n);
  std::map<long, double> cache;
  std::vector<long> keys;
  for (long k2 = 0; k2 <= static_cast<long>(n) * (M - 1) * (M - 1); ++k2) keys.push_back(k2);
  // Only keys that occur as sums of n squares are needed.
  std::vector<char> used(keys.size(), 0);
  for (long i = 0; i < total; ++i) {
    long r = i, k2 = 0;
    for (int d = 0; d < n; ++d) {
      const long o = r % side - (M - 1);
      r /= side;
      k2 += o * o;
    }
    used[k2] = 1;
  }
  std::vector<long> needed;
  for (std::size_t k = 0; k < used.size(); ++k)
    if (used[k]) needed.push_back(static_cast<long>(k));
  std::vector<double> vals(needed.size());
  map_indices_omp(static_cast<long>(needed.size()), [&](long j) { return value_of_k2(needed[j]); },
                  vals.data());
  std::vector<double> by_key(used.size(), 0.0);
  for (std::size_t j = 0; j < needed.size(); ++j) by_key[needed[j]] = vals[j];
  std::vector<double> kernel(total);
  for (long i = 0; i < total; ++i) {
    long r = i, k2 = 0;
    for (int d = 0; d < n; ++d) {
      const long o = r % side - (M - 1);
      r /= side;
      k2 += o * o;
    }
    kernel[i] = by_key[k2];
  }
  return kernel;
}

GridField free_space_laplacian(const GridField& f, double q, LaplacianInfo* info) {
  const int n = f.dim();
  const int M = f.points();
  const double L = f.half_width();
  const double delta = f.delta();
  const double s0 = kPi / (2.0 * std::sqrt(L * delta));
  const double rho_max = 3.2 * s0;
  const double front = unit_sphere_area(n) / std::pow(2.0 * kPi, n);
  const double alpha = n - 1.0 + q;
  auto kA = [&](long k2) {
    const double r = std::sqrt(static_cast<double>(k2)) * delta;
    auto h = [&](double rho) {
      const double x = rho / s0;
      return std::exp(-0.5 * x * x * x * x) * omega_n(n, rho * r);
    };
    return front * power_weighted(alpha, rho_max, h, 1e-12);
  };
  auto kernel = radial_kernel_table(n, M, kA);
  GridField A = fft_linear_convolution(f, kernel);
  LaplacianInfo local;
  GridField B = periodic_laplacian(f, q, &local, s0);
  for (long i = 0; i < A.size(); ++i) A[i] += B[i];
  if (info) {
    info->imag_residue = local.imag_residue;
    info->split_scale = s0;
  }
  return A;
}

double riesz_origin_weight(int n, double q, double delta, SingularWeight weight) {
  const double p = q - n;
  if (weight == SingularWeight::zeta_corrected) {
    return -std::pow(delta, q) * epstein_zeta(n, n - q) / std::pow(delta, n);
  }
  const double h = 0.5 * delta;
  return std::pow(2.0, n) * std::pow(h, p + n) * unit_cube_power_integral(n, p) / std::pow(delta, n);
}

std::vector<double> riesz_kernel(int n, int M, double q, double delta, SingularWeight weight) {
  const double p = q - n;
  const double w0 = riesz_origin_weight(n, q, delta, weight);
  return radial_kernel_table(n, M, [&](long k2) {
    if (k2 == 0) return w0;
    return std::pow(std::sqrt(static_cast<double>(k2)) * delta, p);
  });
}

void check_riesz(const GridField& f, double q) {
  if (f.dim() > 3) throw DomainError("riesz_convolution: grids refused for n > 3");
  if (!(q > 0.0 && q < f.dim())) throw DomainError("riesz_convolution: requires 0 < q < n");
}

}  // namespace

GridField fractional_laplacian(const GridField& f, double q, LaplacianMode mode,
                               LaplacianInfo* info) {
  const int n = f.dim();
  if (!(q > -n)) throw DomainError("fractional_laplacian: requires q > -n");
  if (mode == LaplacianMode::automatic) {
    mode = q < 0.0 ? LaplacianMode::free_space : LaplacianMode::periodic;
  }
  if (info) *info = LaplacianInfo{};
  if (q == 0.0) {
    if (info) info->mode = "identity";
    return f;
  }
  if (mode == LaplacianMode::free_space) {
    if (!(q < 0.0)) throw DomainError("fractional_laplacian: free-space mode needs q < 0");
    if (info) info->mode = "free_space";
    return free_space_laplacian(f, q, info);
  }
  if (info) info->mode = "periodic";
  return periodic_laplacian(f, q, info, 0.0);
}

GridField riesz_convolution(const GridField& f, double q, SingularWeight weight) {
  check_riesz(f, q);
  const int n = f.dim();
  auto kernel = riesz_kernel(n, f.points(), q, f.delta(), weight);
  GridField out = fft_linear_convolution(f, kernel);
  const double c = laplacian_kernel_constant(n, q);
  for (auto& v : out.data()) v *= c;
  return out;
}

GridField riesz_convolution_direct(const GridField& f, double q, SingularWeight weight,
                                   bool parallel) {
  check_riesz(f, q);
  const int n = f.dim();
  const int M = f.points();
  auto kernel = riesz_kernel(n, M, q, f.delta(), weight);
  GridField out(n, f.half_width(), M);
  if (parallel) {
    direct_convolution_omp(n, M, f.data().data(), kernel.data(), out.data().data());
  } else {
    direct_convolution_serial(n, M, f.data().data(), kernel.data(), out.data().data());
  }
  const double scale = laplacian_kernel_constant(n, q) * std::pow(f.delta(), n);
  for (auto& v : out.data()) v *= scale;
  return out;
}

namespace {

// Gamma(a, x) for x > 0 and any real a, by upward recurrence
// Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a when a < 0.
double upper_gamma(double a, double x) {
  if (a > 0.0) return boost::math::tgamma(a, x);
  if (a == 0.0) return boost::math::expint(1, x);
  return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

}  // namespace

double epstein_zeta(int n, double s) {
  if (n < 1 || n > 4) throw DomainError("epstein_zeta: n must be in [1, 4]");
  if (std::abs(s) < 1e-12 || std::abs(s - n) < 1e-12) throw PoleError("epstein_zeta: pole at s = 0 or n");
  constexpr int R = 4;
  const long side = 2 * R + 1;
  const long total = ipow(side, n);
  const double a1 = 0.5 * s;
  const double a2 = 0.5 * (n - s);
  double sum = 0.0;
  for (long i = 0; i < total; ++i) {
    long r = i, k2 = 0;
    for (int d = 0; d < n; ++d) {
      const long o = r % side - R;
      r /= side;
      k2 += o * o;
    }
    if (k2 == 0) continue;
    const double x = kPi * k2;
    // Gamma(a, x) x^{-a} for both halves of the theta-function split.
    sum += upper_gamma(a1, x) * std::pow(x, -a1) + upper_gamma(a2, x) * std::pow(x, -a2);
  }
  sum += 2.0 / (s - n) - 2.0 / s;
  return sum * std::pow(kPi, a1) / std::tgamma(a1);
}

double grid_integral(const GridField& f) {
  double s = 0.0;
  for (double v : f.data()) s += v;
  return s * std::pow(f.delta(), f.dim());
}

namespace {

// Lagrange weights for `order` consecutive nodes starting at j0, evaluated at x.
void lagrange_weights(const GridField& f, int j0, int order, double x, double* w) {
  for (int a = 0; a < order; ++a) {
    double num = 1.0, den = 1.0;
    const double xa = f.coord(j0 + a);
    for (int b = 0; b < order; ++b) {
      if (b == a) continue;
      const double xb = f.coord(j0 + b);
      num *= x - xb;
      den *= xa - xb;
    }
    w[a] = num / den;
  }
}

}  // namespace

double interpolate(const GridField& f, std::span<const double> x, int order) {
  const int n = f.dim();
  const int M = f.points();
  const double L = f.half_width();
  if (order < 2 || order > 8 || order > M) throw DomainError("interpolate: order must be in [2, 8]");
  int j0[4];
  double w[4][8];
  for (int a = 0; a < n; ++a) {
    if (std::abs(x[a]) > L) return 0.0;
    const double t = (x[a] + L) / f.delta() - 0.5;  // fractional node index
    int start = static_cast<int>(std::floor(t)) - (order / 2 - 1);
    start = std::clamp(start, 0, M - order);
    j0[a] = start;
    lagrange_weights(f, start, order, x[a], w[a]);
  }
  // Tensor sum over order^n stencil points.
  const long count = ipow(order, n);
  double acc = 0.0;
  for (long s = 0; s < count; ++s) {
    long r = s, idx = 0;
    double weight = 1.0;
    for (int a = n - 1; a >= 0; --a) {
      const int k = static_cast<int>(r % order);
      r /= order;
      weight *= w[a][k];
    }
    r = s;
    long stride = 1;
    for (int a = n - 1; a >= 0; --a) {
      const int k = static_cast<int>(r % order);
      r /= order;
      idx += (j0[a] + k) * stride;
      stride *= M;
    }
    acc += weight * f[idx];
  }
  return acc;
}

Density grid_density(const GridField& f, int order) {
  auto shared = std::make_shared<GridField>(f);
  Density d(f.dim(), [shared, order](std::span<const double> x) {
    return interpolate(*shared, x, order);
  }, "grid");
  d.set_support(StarBody::cube(f.dim(), f.half_width()));
  d.set_decay({DecayKind::compact, f.half_width() * std::sqrt(static_cast<double>(f.dim()))});
  d.set_scale(4.0 * f.delta());
  d.set_smoothness(2);
  double mn = 0.0;
  for (double v : f.data()) mn = std::min(mn, v);
  d.set_nonnegative(mn >= 0.0);
  d.set_params({static_cast<double>(f.dim()), f.half_width(), static_cast<double>(f.points())});
  return d;
}

double axis_section(const GridField& f) {
  const int n = f.dim();
  const int M = f.points();
  const long slab = f.size() / M;
  std::vector<double> v(M, 0.0);
  for (int j = 0; j < M; ++j) {
    double acc = 0.0;
    for (long s = 0; s < slab; ++s) acc += f[j * slab + s];
    v[j] = acc;
  }
  // Value at x_0 = 0 of the trigonometric interpolant sum_m V_m e^{i xi_m x}
  // on the same frequency nodes as fourier().
  const double dxi = kPi / f.half_width();
  double acc = 0.0;
  for (int j = 0; j < M; ++j) {
    double w = 0.0;
    for (int m = 0; m < M; ++m) w += std::cos((m - 0.5 * M + 0.5) * dxi * f.coord(j));
    acc += w * v[j];
  }
  return acc / M * std::pow(f.delta(), n - 1);
}

namespace {

// int_0^inf rho^{a-1} e^{-rho^2/2} d rho by quadrature.
double gaussian_moment_quad(double a) {
  auto h = [](double r) { return std::exp(-0.5 * r * r); };
  const double head = power_weighted(a - 1.0, 1.0, h, 1e-14);
  auto tail = [&](double r) { return std::pow(r, a - 1.0) * h(r); };
  std::vector<double> br = {1.0, 2.0, 4.0, 6.0, 9.0, 14.0};
  return head + integrate_pieces(tail, br, opts(1e-14)).value;
}

}  // namespace

VerificationReport verify_riesz_pair(int n, double q, double tol) {
  const double C = riesz_fourier_constant(n, q);
  const double area = unit_sphere_area(n);
  VerificationReport rep;
  rep.statement = "riesz_fourier_pair";
  rep.params = {{"n", n}, {"q", q}, {"tol", tol}};
  rep.relation = Relation::eq;
  rep.method = "radial_gauss_kronrod";
  // <|xi|^{-q}, phihat> with phihat = (2 pi)^{n/2} exp(-|xi|^2/2).
  rep.lhs = std::pow(2.0 * kPi, 0.5 * n) * area * gaussian_moment_quad(n - q);
  rep.rhs = C * area * gaussian_moment_quad(q);
  const double closed_l = std::pow(2.0 * kPi, 0.5 * n) * area * std::pow(2.0, 0.5 * (n - q) - 1.0) *
                          std::tgamma(0.5 * (n - q));
  const double closed_r = C * area * std::pow(2.0, 0.5 * q - 1.0) * std::tgamma(0.5 * q);
  rep.budgets.quadrature = tol * std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.finalize();
  rep.extra = {{"relative_error", std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs)},
               {"lhs_closed_form", closed_l},
               {"rhs_closed_form", closed_r}};
  return rep;
}

}  // namespace fracradon
