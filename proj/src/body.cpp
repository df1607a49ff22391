#include "fracradon/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/kernels.hpp"
#include "fracradon/quadrature.hpp"

namespace fracradon {

std::string to_string(BodyFamily f) {
  switch (f) {
    case BodyFamily::ball:
      return "ball";
    case BodyFamily::cube:
      return "cube";
    case BodyFamily::lp_ball:
      return "lp_ball";
    case BodyFamily::ellipsoid:
      return "ellipsoid";
    case BodyFamily::custom:
      return "custom";
    case BodyFamily::tabulated:
      return "tabulated";
  }
  return "custom";
}

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw DomainError("body: dimension must be in [1, 16]");
}

}  // namespace

StarBody StarBody::ball(int n, double r) {
  check_dim(n);
  if (!(r > 0.0)) throw DomainError("ball: radius must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::ball;
  K.name_ = "ball";
  K.params_ = {r};
  K.circumradius_ = r;
  K.rho_ = [r](std::span<const double>) { return r; };
  K.gauge_ = [r](std::span<const double> x) { return norm2(x) / r; };
  return K;
}

StarBody StarBody::cube(int n, double a) {
  check_dim(n);
  if (!(a > 0.0)) throw DomainError("cube: half-side must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::cube;
  K.name_ = "cube";
  K.params_ = {a};
  K.circumradius_ = a * std::sqrt(static_cast<double>(n));
  K.gauge_ = [a](std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m / a;
  };
  auto g = K.gauge_;
  K.rho_ = [g](std::span<const double> u) { return 1.0 / g(u); };
  return K;
}

StarBody StarBody::lp_ball(int n, double p, double r) {
  check_dim(n);
  if (!(p >= 1.0)) throw DomainError("lp_ball: p must be >= 1 (convex bodies only)");
  if (!(r > 0.0)) throw DomainError("lp_ball: radius must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::lp_ball;
  K.name_ = "lp_ball";
  K.params_ = {p, r};
  // ||u||_p >= n^{1/p - 1/2} |u|_2 for p >= 2, and >= |u|_2 for p <= 2.
  K.circumradius_ = r * std::max(1.0, std::pow(static_cast<double>(n), 0.5 - 1.0 / p));
  K.gauge_ = [p, r](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p) / r;
  };
  auto g = K.gauge_;
  K.rho_ = [g](std::span<const double> u) { return 1.0 / g(u); };
  return K;
}

StarBody StarBody::ellipsoid(std::vector<double> axes) {
  const int n = static_cast<int>(axes.size());
  check_dim(n);
  for (double a : axes)
    if (!(a > 0.0)) throw DomainError("ellipsoid: axes must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::ellipsoid;
  K.name_ = "ellipsoid";
  K.params_ = axes;
  K.circumradius_ = *std::max_element(axes.begin(), axes.end());
  K.gauge_ = [axes](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < axes.size(); ++i) s += (x[i] / axes[i]) * (x[i] / axes[i]);
    return std::sqrt(s);
  };
  auto g = K.gauge_;
  K.rho_ = [g](std::span<const double> u) { return 1.0 / g(u); };
  return K;
}

StarBody StarBody::custom(int n, RadialFn rho, bool symmetric, double circumradius,
                          std::string name) {
  check_dim(n);
  if (!rho) throw DomainError("custom body: empty radial function");
  if (!(circumradius > 0.0)) throw DomainError("custom body: circumradius must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::custom;
  K.name_ = std::move(name);
  K.symmetric_ = symmetric;
  K.circumradius_ = circumradius;
  K.rho_ = std::move(rho);
  return K;
}

StarBody StarBody::tabulated(const std::vector<Direction>& dirs, const std::vector<double>& rho,
                             bool symmetric) {
  if (dirs.empty() || dirs.size() != rho.size()) {
    throw DomainError("tabulated body: need matching non-empty direction and rho lists");
  }
  const int n = dirs.front().dim();
  check_dim(n);
  for (const auto& d : dirs)
    if (d.dim() != n) throw DomainError("tabulated body: mixed dimensions");
  for (double r : rho)
    if (!(r > 0.0)) throw DomainError("tabulated body: rho must be positive");
  StarBody K;
  K.n_ = n;
  K.family_ = BodyFamily::tabulated;
  K.name_ = "tabulated";
  K.symmetric_ = symmetric;
  K.circumradius_ = *std::max_element(rho.begin(), rho.end());
  if (n == 2) {
    std::vector<std::pair<double, double>> table;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      double a = std::atan2(dirs[i][1], dirs[i][0]);
      if (a < 0) a += 2.0 * kPi;
      table.emplace_back(a, rho[i]);
    }
    std::sort(table.begin(), table.end());
    K.rho_ = [table](std::span<const double> u) {
      double a = std::atan2(u[1], u[0]);
      if (a < 0) a += 2.0 * kPi;
      auto it = std::upper_bound(table.begin(), table.end(), std::make_pair(a, -1.0),
                                 [](const auto& x, const auto& y) { return x.first < y.first; });
      const auto& hi = it == table.end() ? table.front() : *it;
      const auto& lo = it == table.begin() ? table.back() : *(it - 1);
      double span = hi.first - lo.first;
      double off = a - lo.first;
      if (span <= 0) span += 2.0 * kPi;
      if (off < 0) off += 2.0 * kPi;
      if (span == 0.0) return lo.second;
      const double w = off / span;
      return (1.0 - w) * lo.second + w * hi.second;
    };
  } else {
    K.rho_ = [dirs, rho](std::span<const double> u) {
      double best = -2.0;
      double value = rho.front();
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double d = dot(dirs[i].span(), u);
        if (d > best) {
          best = d;
          value = rho[i];
        }
      }
      return value;
    };
  }
  return K;
}

double StarBody::gauge(std::span<const double> x) const {
  if (gauge_) return gauge_(x);
  const double r = norm2(x);
  if (r == 0.0) return 0.0;
  Scratch u;
  for (int i = 0; i < n_; ++i) u[i] = x[i] / r;
  return r / rho_(std::span<const double>(u.data(), n_));
}

StarBody StarBody::dilated(double lam) const {
  if (!(lam > 0.0)) throw DomainError("dilate: factor must be positive");
  switch (family_) {
    case BodyFamily::ball:
      return ball(n_, lam * params_[0]);
    case BodyFamily::cube:
      return cube(n_, lam * params_[0]);
    case BodyFamily::lp_ball:
      return lp_ball(n_, params_[0], lam * params_[1]);
    case BodyFamily::ellipsoid: {
      auto axes = params_;
      for (double& a : axes) a *= lam;
      return ellipsoid(axes);
    }
    default:
      break;
  }
  StarBody K = *this;
  auto base = rho_;
  K.rho_ = [base, lam](std::span<const double> u) { return lam * base(u); };
  K.gauge_ = {};
  K.circumradius_ = lam * circumradius_;
  K.params_ = params_;
  K.params_.push_back(lam);
  return K;
}

std::optional<double> StarBody::exact_volume() const {
  const double n = n_;
  switch (family_) {
    case BodyFamily::ball:
      return unit_ball_volume(n_) * std::pow(params_[0], n);
    case BodyFamily::cube:
      return std::pow(2.0 * params_[0], n);
    case BodyFamily::lp_ball: {
      const double p = params_[0];
      return std::pow(2.0 * params_[1] * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
    }
    case BodyFamily::ellipsoid: {
      double v = unit_ball_volume(n_);
      for (double a : params_) v *= a;
      return v;
    }
    default:
      return std::nullopt;
  }
}

double minkowski_functional(const StarBody& K, std::span<const double> x) { return K.gauge(x); }

StarBody dilate(const StarBody& K, double lam) { return K.dilated(lam); }

namespace {

QuadOptions level_options(double rel_tol) {
  QuadOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = 1e-300;
  o.max_intervals = 400;
  return o;
}

std::vector<double> uniform_breaks(double a, double b, int pieces) {
  std::vector<double> br(pieces + 1);
  for (int i = 0; i <= pieces; ++i) br[i] = a + (b - a) * i / pieces;
  return br;
}

// Recursive: int_{S^{d-1}} g over the last d coordinates of buf, with the
// leading coordinates fixed and scaled by `radius`.
QuadResult sphere_rec(int d, int offset, double radius, Scratch& buf, int n,
                      const std::function<double(std::span<const double>)>& g, double rel_tol) {
  if (d == 1) {
    buf[offset] = radius;
    const double a = g(std::span<const double>(buf.data(), n));
    buf[offset] = -radius;
    const double b = g(std::span<const double>(buf.data(), n));
    return {a + b, 0.0, 2, true};
  }
  if (d == 2) {
    auto f = [&](double th) {
      buf[offset] = radius * std::cos(th);
      buf[offset + 1] = radius * std::sin(th);
      return g(std::span<const double>(buf.data(), n));
    };
    return integrate_pieces(f, uniform_breaks(0.0, 2.0 * kPi, 8), level_options(rel_tol));
  }
  // x = (cos a, sin a v) with v on S^{d-2}; measure sin^{d-2} a da dv.
  auto f = [&](double a) {
    buf[offset] = radius * std::cos(a);
    const double s = std::sin(a);
    auto inner = sphere_rec(d - 1, offset + 1, radius * s, buf, n, g, rel_tol);
    return std::pow(s, d - 2) * inner.value;
  };
  return integrate_pieces(f, uniform_breaks(0.0, kPi, 4), level_options(rel_tol));
}

}  // namespace

Estimate sphere_integral(int n, const std::function<double(std::span<const double>)>& g,
                         double rel_tol) {
  if (n < 1 || n > 4) throw DomainError("sphere_integral: nested quadrature supports n <= 4");
  Scratch buf{};
  auto r = sphere_rec(n, 0, 1.0, buf, n, g, rel_tol);
  Estimate e;
  e.value = r.value;
  e.quad_error = std::max(r.error, rel_tol * std::abs(r.value));
  e.method = "nested_gauss_kronrod";
  return e;
}

Estimate integrate_over_body(const StarBody& K, const std::function<double(std::span<const double>)>& f,
                             double cutoff, double rel_tol) {
  const int n = K.dim();
  if (n > 4) throw DomainError("integrate_over_body: quadrature refused for n > 4");
  auto radial = [&](std::span<const double> u) {
    const double R = std::min(K.rho(u), cutoff);
    Scratch x;
    auto inner = [&](double r) {
      for (int i = 0; i < n; ++i) x[i] = r * u[i];
      return f(std::span<const double>(x.data(), n)) * std::pow(r, n - 1);
    };
    return integrate_pieces(inner, uniform_breaks(0.0, R, 2), level_options(rel_tol)).value;
  };
  auto e = sphere_integral(n, radial, rel_tol);
  e.method = "polar_quadrature";
  return e;
}

Estimate integrate_over_body_mc(const StarBody& K,
                                const std::function<double(std::span<const double>)>& f,
                                long samples, std::uint64_t seed) {
  const int n = K.dim();
  if (samples < 2) throw DomainError("integrate_over_body_mc: need >= 2 samples");
  constexpr long kChunk = 8192;
  const long chunks = (samples + kChunk - 1) / kChunk;
  const double wn = unit_ball_volume(n);
  auto chunk_fn = [&](long c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    ChunkStats st;
    const long count = std::min(kChunk, samples - c * kChunk);
    Scratch u, x;
    for (long s = 0; s < count; ++s) {
      double r2 = 0.0;
      do {
        r2 = 0.0;
        for (int i = 0; i < n; ++i) {
          u[i] = normal(rng);
          r2 += u[i] * u[i];
        }
      } while (r2 < 1e-24);
      const double inv = 1.0 / std::sqrt(r2);
      for (int i = 0; i < n; ++i) u[i] *= inv;
      const double rho = K.rho(std::span<const double>(u.data(), n));
      const double r = rho * std::pow(uniform(rng), 1.0 / n);
      for (int i = 0; i < n; ++i) x[i] = r * u[i];
      const double v = wn * std::pow(rho, n) * f(std::span<const double>(x.data(), n));
      st.sum += v;
      st.sumsq += v * v;
      ++st.count;
    }
    return st;
  };
  const auto total = reduce_in_order(run_chunks_omp(chunks, chunk_fn));
  Estimate e;
  const double N = static_cast<double>(total.count);
  e.value = total.sum / N;
  const double var = std::max(0.0, total.sumsq / N - e.value * e.value) * N / (N - 1.0);
  e.std_error = std::sqrt(var / N);
  e.samples = total.count;
  e.method = "monte_carlo_radial";
  return e;
}

Estimate volume(const StarBody& K, VolumeMethod method, long samples, std::uint64_t seed) {
  const int n = K.dim();
  if (method == VolumeMethod::monte_carlo) {
    auto e = integrate_over_body_mc(K, [](std::span<const double>) { return 1.0; }, samples, seed);
    e.method = "monte_carlo_radial";
    return e;
  }
  if (n > 4) throw DomainError("volume: radial quadrature refused for n > 4; use monte_carlo");
  auto e = sphere_integral(
      n, [&](std::span<const double> u) { return std::pow(K.rho(u), n) / n; }, 1e-11);
  e.method = "radial_quadrature";
  return e;
}

int default_mesh_size(int n) {
  if (n <= 1) return 2;
  if (n == 2) return 720;
  if (n == 3) return 4000;
  return 20000;
}

RadialDistance radial_distance(const StarBody& K, const StarBody& L, int mesh_size,
                               std::uint64_t seed) {
  if (K.dim() != L.dim()) throw DomainError("radial_distance: dimension mismatch");
  if (mesh_size <= 0) mesh_size = default_mesh_size(K.dim());
  const auto mesh = sphere_mesh(K.dim(), mesh_size, seed);
  double d = 0.0;
  for (const auto& u : mesh) d = std::max(d, std::abs(K.rho(u) - L.rho(u)));
  return {d, static_cast<int>(mesh.size())};
}

bool contains_scaled_ball(const StarBody& K, double r, int mesh_size, std::uint64_t seed) {
  if (!(r > 0.0)) throw DomainError("contains_scaled_ball: r must be positive");
  if (mesh_size <= 0) mesh_size = default_mesh_size(K.dim());
  const auto mesh = sphere_mesh(K.dim(), mesh_size, seed);
  for (const auto& u : mesh)
    if (K.rho(u) < r * (1.0 - 1e-12)) return false;
  return true;
}

}  // namespace fracradon
