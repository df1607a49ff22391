#include "fracradon/radon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "fracradon/body.hpp"
#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/kernels.hpp"
#include "fracradon/quadrature.hpp"

namespace fracradon {

namespace {

QuadOptions opts(double rel) {
  QuadOptions o;
  o.rel_tol = rel;
  o.abs_tol = 1e-300;
  o.max_intervals = 2000;
  return o;
}

std::vector<double> breaks(double a, double b, int pieces) {
  std::vector<double> br(pieces + 1);
  for (int i = 0; i <= pieces; ++i) br[i] = a + (b - a) * i / pieces;
  return br;
}

double radial_cutoff(const Density& f) {
  double r = f.cutoff_radius();
  if (!std::isfinite(r)) throw DomainError("radon: polynomial decay needs Monte Carlo or a closed form");
  return r;
}

// Rf for f(x) = F(|x|^2): |S^{n-2}| int_0^R F(t^2 + r^2) r^{n-2} dr.
RadonValue radial_value(const Density& f, double t, double rel) {
  const int n = f.dim();
  const auto& F = f.radial();
  RadonValue out;
  out.method = "radial";
  if (n == 1) {
    out.value = F(0, t * t);
    return out;
  }
  const double cut = radial_cutoff(f);
  const double R2 = cut * cut - t * t;
  if (R2 <= 0.0) return out;
  auto g = [&](double r) { return F(0, t * t + r * r) * std::pow(r, n - 2); };
  auto res = integrate_pieces(g, breaks(0.0, std::sqrt(R2), 8), opts(rel));
  out.value = unit_sphere_area(n - 1) * res.value;
  out.quad_error = unit_sphere_area(n - 1) * std::max(res.error, rel * std::abs(res.value));
  return out;
}

// Distance from c along unit w to the boundary of a star body containing c.
double boundary_distance(const StarBody& K, std::span<const double> c, std::span<const double> w) {
  const int n = K.dim();
  Scratch x;
  auto inside = [&](double r) {
    for (int i = 0; i < n; ++i) x[i] = c[i] + r * w[i];
    return K.contains(std::span<const double>(x.data(), n));
  };
  double lo = 0.0;
  double hi = 2.0 * K.circumradius() + norm2(c);
  for (int it = 0; it < 64 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

RadonValue polar_value(const Density& f, const Direction& xi, double t, double rel) {
  const int n = f.dim();
  RadonValue out;
  out.method = "polar_quadrature";
  Scratch c;
  for (int i = 0; i < n; ++i) c[i] = t * xi[i];
  const std::span<const double> cs(c.data(), n);
  if (n == 1) {
    out.value = f(cs);
    return out;
  }
  if (n > 4) throw DomainError("radon: quadrature refused for n > 4; use monte_carlo");
  const double cut = radial_cutoff(f);
  const double R2 = cut * cut - t * t;
  if (R2 <= 0.0) return out;
  const double Rc = std::sqrt(R2);
  const auto frame = hyperplane_frame(xi);
  const auto& K = f.support();
  auto in_plane = [&](std::span<const double> u, Scratch& w) {
    for (int i = 0; i < n; ++i) {
      w[i] = 0.0;
      for (int k = 0; k < n - 1; ++k) w[i] += u[k] * frame[k][i];
    }
  };
  if (K && !K->contains(cs)) {
    // Polar coordinates need a centre inside the support.
    const auto probes = sphere_mesh(n - 1, n == 2 ? 2 : 256, 7);
    Scratch w, x;
    for (const auto& u : probes) {
      in_plane(u.span(), w);
      for (int s = 1; s <= 256; ++s) {
        const double r = Rc * s / 256.0;
        for (int i = 0; i < n; ++i) x[i] = c[i] + r * w[i];
        if (K->contains(std::span<const double>(x.data(), n))) {
          throw BudgetError("radon: hyperplane meets the support away from its centre point; "
                            "use method monte_carlo");
        }
      }
    }
    return out;
  }
  auto ray = [&](std::span<const double> u) {
    Scratch w, x;
    in_plane(u, w);
    const std::span<const double> ws(w.data(), n);
    double ext = Rc;
    if (K) ext = std::min(ext, boundary_distance(*K, cs, ws));
    auto g = [&](double r) {
      for (int i = 0; i < n; ++i) x[i] = c[i] + r * w[i];
      return f(std::span<const double>(x.data(), n)) * std::pow(r, n - 2);
    };
    return integrate_pieces(g, breaks(0.0, ext, 4), opts(rel)).value;
  };
  auto e = sphere_integral(n - 1, ray, rel);
  out.value = e.value;
  out.quad_error = e.quad_error;
  return out;
}

RadonValue mc_value(const Density& f, const Direction& xi, double t, long samples,
                    std::uint64_t seed) {
  const int n = f.dim();
  RadonValue out;
  out.method = "monte_carlo";
  Scratch c;
  for (int i = 0; i < n; ++i) c[i] = t * xi[i];
  if (n == 1) {
    out.value = f(std::span<const double>(c.data(), 1));
    return out;
  }
  if (samples < 2) throw DomainError("radon: need >= 2 Monte Carlo samples");
  const int d = n - 1;
  double s = f.scale();
  if (f.decay().kind == DecayKind::gaussian) s = f.decay().param;
  if (f.decay().kind == DecayKind::compact) s = std::max(0.5 * f.decay().param, 1e-3);
  const auto frame = hyperplane_frame(xi);
  const double log_norm = -0.5 * d * std::log(2.0 * kPi * s * s);
  constexpr long kChunk = 8192;
  const long chunks = (samples + kChunk - 1) / kChunk;
  auto chunk_fn = [&](long k) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    std::normal_distribution<double> normal;
    ChunkStats st;
    const long count = std::min(kChunk, samples - k * kChunk);
    Scratch y, x;
    for (long j = 0; j < count; ++j) {
      double y2 = 0.0;
      for (int a = 0; a < d; ++a) {
        y[a] = s * normal(rng);
        y2 += y[a] * y[a];
      }
      for (int i = 0; i < n; ++i) {
        x[i] = c[i];
        for (int a = 0; a < d; ++a) x[i] += y[a] * frame[a][i];
      }
      const double v = f(std::span<const double>(x.data(), n)) *
                       std::exp(0.5 * y2 / (s * s) - log_norm);
      st.sum += v;
      st.sumsq += v * v;
      ++st.count;
    }
    return st;
  };
  const auto total = reduce_in_order(run_chunks_omp(chunks, chunk_fn));
  const double N = static_cast<double>(total.count);
  out.value = total.sum / N;
  const double var = std::max(0.0, total.sumsq / N - out.value * out.value) * N / (N - 1.0);
  out.std_error = std::sqrt(var / N);
  return out;
}

bool closed_allowed(const RadonOptions& opt) { return opt.method == RadonMethod::automatic; }

bool radial_allowed(const Density& f, const RadonOptions& opt) {
  return opt.method == RadonMethod::automatic && f.isotropic() && f.radial() &&
         std::isfinite(f.cutoff_radius());
}

}  // namespace

RadonValue radon_value(const Density& f, const Direction& xi, double t, const RadonOptions& opt) {
  if (xi.dim() != f.dim()) throw DomainError("radon: direction dimension mismatch");
  if (closed_allowed(opt)) {
    if (auto P = f.closed_profile(xi)) {
      RadonValue out;
      out.value = (t < 0.0 && P->is_even()) ? (*P)(-t) : (*P)(std::abs(t));
      out.method = "closed_form";
      return out;
    }
  }
  if (radial_allowed(f, opt)) return radial_value(f, t, opt.rel_tol);
  if (opt.method == RadonMethod::monte_carlo || (opt.method == RadonMethod::automatic && f.dim() > 4)) {
    return mc_value(f, xi, t, opt.samples, opt.seed);
  }
  return polar_value(f, xi, t, opt.rel_tol);
}

double radon(const Density& f, const Direction& xi, double t, const RadonOptions& opt) {
  return radon_value(f, xi, t, opt).value;
}

Profile radon_profile(const Density& f, const Direction& xi, const RadonOptions& opt) {
  if (xi.dim() != f.dim()) throw DomainError("radon_profile: direction dimension mismatch");
  if (closed_allowed(opt)) {
    if (auto P = f.closed_profile(xi)) return *P;
  }
  Decay decay = f.decay();
  if (f.support()) decay = {DecayKind::compact, f.support()->circumradius()};
  if (radial_allowed(f, opt)) {
    const int n = f.dim();
    const double cut = radial_cutoff(f);
    const double rel = opt.rel_tol;
    auto fc = f;
    auto cache = std::make_shared<std::pair<std::mutex, std::map<int, double>>>();
    auto deriv = [fc, n, cut, rel, cache](int k) {
      if (k % 2) return 0.0;
      {
        std::lock_guard<std::mutex> lock(cache->first);
        auto it = cache->second.find(k);
        if (it != cache->second.end()) return it->second;
      }
      const int j = k / 2;
      const auto& F = fc.radial();
      double Pj;
      if (n == 1) {
        Pj = F(j, 0.0);
      } else {
        auto g = [&](double r) { return F(j, r * r) * std::pow(r, n - 2); };
        Pj = unit_sphere_area(n - 1) * integrate_pieces(g, breaks(0.0, cut, 16), opts(rel)).value;
      }
      // phi(t) = P(t^2) gives phi^{(2j)}(0) = (2j)!/j! P^{(j)}(0).
      const double v = std::exp(std::lgamma(2.0 * j + 1.0) - std::lgamma(j + 1.0)) * Pj;
      std::lock_guard<std::mutex> lock(cache->first);
      cache->second[k] = v;
      return v;
    };
    return Profile([fc, rel](double t) { return radial_value(fc, t, rel).value; },
                   f.smoothness(), decay, true, f.scale(), "radon_radial", deriv);
  }
  auto fc = f;
  auto xc = xi;
  auto memo = std::make_shared<std::pair<std::mutex, std::map<double, double>>>();
  const bool even = f.even();
  auto eval = [fc, xc, opt, memo, even](double t) {
    if (even) t = std::abs(t);
    {
      std::lock_guard<std::mutex> lock(memo->first);
      auto it = memo->second.find(t);
      if (it != memo->second.end()) return it->second;
    }
    const double v = radon_value(fc, xc, t, opt).value;
    std::lock_guard<std::mutex> lock(memo->first);
    memo->second[t] = v;
    return v;
  };
  return Profile(eval, f.smoothness(), decay, even, f.scale(), "radon");
}

double radon_frac_deriv(const Density& f, const Direction& xi, double q, const RadonOptions& opt) {
  const FracOrder fo(q);
  const auto P = radon_profile(f, xi, opt);
  if (fo.is_odd_integer()) return frac_derivative_odd(P, fo.odd_k());
  return frac_derivative_at_zero(P, q);
}

double radon_frac_deriv_theorem(const Density& f, const Direction& xi, double q,
                                const RadonOptions& opt) {
  return frac_derivative_theorem(radon_profile(f, xi, opt), q);
}

SectionValue radon_frac_deriv_via_laplacian(const Density& f, const Direction& xi, double q,
                                            const SectionGrid& grid) {
  const int n = f.dim();
  if (xi.dim() != n) throw DomainError("laplacian path: direction dimension mismatch");
  if (FracOrder(q).near_odd_integer(1e-6)) {
    throw OddOrderError("laplacian path: q is an odd integer; use the odd-order pathway");
  }
  if (!(q > -1.0)) throw DomainError("laplacian path: the section diverges for q <= -1");
  const auto Q = householder_matrix(xi);
  auto base = f.function();
  // g(x) = f(Q x) has the section x_1 = 0 equal to the hyperplane xi^perp of f.
  Density g(n, [base, Q, n](std::span<const double> x) {
    Scratch y;
    for (int i = 0; i < n; ++i) {
      y[i] = 0.0;
      for (int j = 0; j < n; ++j) y[i] += Q[i * n + j] * x[j];
    }
    return base(std::span<const double>(y.data(), n));
  }, f.family());
  g.set_decay(f.decay());
  g.set_scale(f.scale());
  if (f.support()) g.set_support(StarBody::ball(n, f.support()->circumradius()));
  const double h = grid.spacing > 0.0 ? grid.spacing : 0.25 * f.scale();
  SectionValue out;
  auto level = [&](int M) {
    const double L = 0.5 * M * h;
    auto field = sample(g, L, M, false);
    out.truncation = std::max(out.truncation, truncation_fraction(g, L));
    LaplacianInfo info;
    auto lap = fractional_laplacian(field, q, grid.mode, &info);
    out.imag_residue = std::max(out.imag_residue, info.imag_residue);
    return axis_section(lap);
  };
  out.coarse = level(grid.M);
  out.half_width = 0.5 * grid.M * h;
  out.points = grid.M;
  if (grid.richardson) {
    out.fine = level(2 * grid.M);
    const double r = std::pow(2.0, 1.0 + q);
    out.section = (r * out.fine - out.coarse) / (r - 1.0);
  } else {
    out.section = out.coarse;
  }
  out.literal = std::cos(0.5 * kPi * q) * out.section;
  return out;
}

double fourier_slice_residual(const Density& f, const Direction& xi, const SliceGrid& grid) {
  const int n = f.dim();
  if (!f.fourier()) throw DomainError("fourier_slice_residual: no closed-form Fourier transform");
  if (!f.even()) throw DomainError("fourier_slice_residual: even densities only");
  RadonOptions opt;
  if (grid.force_quadrature) opt.method = RadonMethod::quadrature;
  opt.rel_tol = 1e-11;
  const auto P = radon_profile(f, xi, opt);
  // Composite Gauss-Legendre lattice on [0, T], graded geometrically toward a
  // compact edge where the profile is not smooth.
  const double T = radial_cutoff(f);
  const bool compact = f.support() || f.decay().kind == DecayKind::compact;
  std::vector<double> br;
  const double uniform_end = compact ? 0.5 * T : T;
  const int panels = std::max(4, static_cast<int>(std::ceil(uniform_end / 0.125)));
  for (int i = 0; i <= panels; ++i) br.push_back(uniform_end * i / panels);
  if (compact) {
    double gap = 0.5 * T;
    for (int k = 0; k < 44; ++k) {
      gap *= 0.5;
      br.push_back(T - gap);
    }
    br.push_back(T);
  }
  const auto rule = gauss_legendre(16);
  std::vector<double> nodes, weights;
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    const double a = br[p], b = br[p + 1];
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[k]);
      weights.push_back(0.5 * (b - a) * rule.weights[k]);
    }
  }
  std::vector<double> vals(nodes.size());
  map_indices_omp(static_cast<long>(nodes.size()), [&](long i) { return P(nodes[i]); }, vals.data());
  double peak = 0.0, worst = 0.0;
  Scratch z;
  for (int m = 0; m < grid.M; ++m) {
    const double zm = (m - 0.5 * grid.M + 0.5) * kPi / grid.L;
    double ph = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) ph += weights[i] * vals[i] * std::cos(zm * nodes[i]);
    ph *= 2.0;
    for (int i = 0; i < n; ++i) z[i] = zm * xi[i];
    const double fh = f.fourier()(std::span<const double>(z.data(), n));
    peak = std::max(peak, std::abs(fh));
    worst = std::max(worst, std::abs(ph - fh));
  }
  return peak > 0.0 ? worst / peak : worst;
}

namespace {

Direction normalized(const std::vector<double>& v) { return Direction(v); }

}  // namespace

DirectionMax max_over_directions(int n, const std::function<double(const Direction&)>& value,
                                 const DirectionSearch& search) {
  const int count = search.mesh > 0 ? search.mesh : default_mesh_size(n);
  const auto mesh = sphere_mesh(n, count, search.seed);
  std::vector<double> vals(mesh.size());
  map_indices_omp(static_cast<long>(mesh.size()), [&](long i) { return value(mesh[i]); }, vals.data());
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;
  DirectionMax out{mesh[best], vals[best], *std::min_element(vals.begin(), vals.end()), vals[best],
                   static_cast<int>(mesh.size()), {}};
  if (!search.ascent || n < 2) return out;
  constexpr double kH = 1e-3;
  double step = 0.2;
  for (int it = 0; it < search.max_iterations && step > 1e-6; ++it) {
    const auto& x = out.best.components();
    const auto frame = hyperplane_frame(out.best);
    std::vector<double> grad(n, 0.0);
    for (const auto& e : frame) {
      std::vector<double> p(n), m(n);
      for (int i = 0; i < n; ++i) {
        p[i] = x[i] + kH * e[i];
        m[i] = x[i] - kH * e[i];
      }
      const double d = (value(normalized(p)) - value(normalized(m))) / (2.0 * kH);
      for (int i = 0; i < n; ++i) grad[i] += d * e[i];
    }
    const double gn = norm2(grad);
    if (!(gn > 0.0)) break;
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = x[i] + step * grad[i] / gn;
    const Direction cand = normalized(c);
    const double v = value(cand);
    if (v > out.value) {
      out.best = cand;
      out.value = v;
      out.trace.push_back(v);
    } else {
      step *= 0.5;
    }
  }
  return out;
}

DirectionMax max_over_directions(const Density& f, double q, const DirectionSearch& search,
                                 bool theorem, const RadonOptions& opt) {
  auto value = [&](const Direction& xi) {
    return theorem ? radon_frac_deriv_theorem(f, xi, q, opt) : radon_frac_deriv(f, xi, q, opt);
  };
  if (f.isotropic()) {
    const auto e1 = Direction::axis(f.dim(), 0);
    const double v = value(e1);
    return {e1, v, v, v, 1, {}};
  }
  return max_over_directions(f.dim(), value, search);
}

}  // namespace fracradon
