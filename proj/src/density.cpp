#include "fracradon/density.hpp"

#include <cmath>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"

namespace fracradon {

namespace {

double binomial_general(double a, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= (a - i + 1.0) / i;
  return c;
}

double quad_form(const std::vector<double>& A, std::span<const double> x) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += A[i * n + j] * x[j];
    s += x[i] * row;
  }
  return s;
}

double largest_eigenvalue(const std::vector<double>& A, int n) {
  std::vector<double> v(n, 1.0), w(n);
  double lam = 0.0;
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < n; ++i) {
      w[i] = 0.0;
      for (int j = 0; j < n; ++j) w[i] += A[i * n + j] * v[j];
    }
    const double r = norm2(w);
    for (int i = 0; i < n; ++i) v[i] = w[i] / r;
    if (std::abs(r - lam) < 1e-14 * r) return r;
    lam = r;
  }
  return lam;
}

}  // namespace

GaussianForm make_gaussian_form(std::vector<double> cov, double amplitude) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cov.size()))));
  if (n < 1 || n * n != static_cast<int>(cov.size())) {
    throw DomainError("gaussian_cov: covariance must be a square matrix");
  }
  std::vector<double> L(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (std::abs(cov[i * n + j] - cov[j * n + i]) > 1e-12 * (1.0 + std::abs(cov[i * n + j]))) {
        throw DomainError("gaussian_cov: covariance must be symmetric");
      }
      double s = cov[i * n + j];
      for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
      if (i == j) {
        if (!(s > 0.0)) throw DomainError("gaussian_cov: covariance must be positive definite");
        L[i * n + i] = std::sqrt(s);
      } else {
        L[i * n + j] = s / L[j * n + j];
      }
    }
  }
  double det = 1.0;
  for (int i = 0; i < n; ++i) det *= L[i * n + i] * L[i * n + i];
  // Inverse column by column from L L^T x = e_k.
  std::vector<double> inv(n * n, 0.0), y(n), x(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      double s = (i == k) ? 1.0 : 0.0;
      for (int j = 0; j < i; ++j) s -= L[i * n + j] * y[j];
      y[i] = s / L[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int j = i + 1; j < n; ++j) s -= L[j * n + i] * x[j];
      x[i] = s / L[i * n + i];
    }
    for (int i = 0; i < n; ++i) inv[i * n + k] = x[i];
  }
  return {amplitude, std::move(cov), std::move(inv), det};
}

Density::Density(int n, Fn eval, std::string family)
    : n_(n), eval_(std::move(eval)), family_(std::move(family)) {
  if (n_ < 1 || n_ > kMaxDim) throw DomainError("Density: dimension must be in [1, 16]");
  if (!eval_) throw DomainError("Density: empty evaluation function");
}

double Density::cutoff_radius() const {
  double r = decay_.cutoff();
  if (support_) r = std::min(r, support_->circumradius());
  return r;
}

std::optional<Profile> Density::closed_profile(const Direction& xi) const {
  if (xi.dim() != n_) throw DomainError("closed_profile: direction dimension mismatch");
  if (profile_fn_) return profile_fn_(xi);
  return std::nullopt;
}

Density Density::gaussian_cov(std::vector<double> cov, double amplitude) {
  auto form = make_gaussian_form(std::move(cov), amplitude);
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(form.cov.size()))));
  auto inv = form.cov_inv;
  Density f(n, [inv, amplitude](std::span<const double> x) {
    return amplitude * std::exp(-0.5 * quad_form(inv, x));
  }, "gaussian");
  const double smax = std::sqrt(largest_eigenvalue(form.cov, n));
  f.decay_ = {DecayKind::gaussian, smax};
  double smin2 = 1e300;
  for (int i = 0; i < n; ++i) smin2 = std::min(smin2, form.cov[i * n + i]);
  f.scale_ = std::sqrt(smin2);
  f.nonnegative_ = amplitude >= 0.0;
  const double det = form.det;
  auto cov_m = form.cov;
  f.fourier_ = [cov_m, det, amplitude, n](std::span<const double> xi) {
    return amplitude * std::pow(2.0 * kPi, 0.5 * n) * std::sqrt(det) *
           std::exp(-0.5 * quad_form(cov_m, xi));
  };
  f.profile_fn_ = [cov_m, det, amplitude, n](const Direction& xi) -> std::optional<Profile> {
    const double s = std::sqrt(quad_form(cov_m, xi.span()));
    const double amp = amplitude * std::pow(2.0 * kPi, 0.5 * (n - 1)) * std::sqrt(det) / s;
    return Profile::gaussian(s, amp);
  };
  f.gaussian_ = std::move(form);
  f.params_ = f.gaussian_->cov;
  f.params_.push_back(amplitude);
  return f;
}

Density Density::gaussian(int n, double sigma, double amplitude) {
  if (!(sigma > 0.0)) throw DomainError("gaussian density: sigma must be positive");
  std::vector<double> cov(n * n, 0.0);
  for (int i = 0; i < n; ++i) cov[i * n + i] = sigma * sigma;
  Density f = gaussian_cov(std::move(cov), amplitude);
  const double c = -0.5 / (sigma * sigma);
  f.radial_ = [amplitude, c](int j, double s) { return amplitude * std::pow(c, j) * std::exp(c * s); };
  f.isotropic_ = true;
  f.params_ = {sigma, amplitude};
  return f;
}

Density Density::normal(int n, double sigma) {
  Density f = gaussian(n, sigma, std::pow(2.0 * kPi * sigma * sigma, -0.5 * n));
  f.family_ = "normal";
  f.params_ = {sigma};
  return f;
}

Density Density::anisotropic_gaussian(const std::vector<double>& sigmas, const Direction& axis,
                                      double amplitude) {
  const int n = static_cast<int>(sigmas.size());
  if (axis.dim() != n) throw DomainError("anisotropic_gaussian: axis dimension mismatch");
  const auto Q = householder_matrix(axis);
  std::vector<double> cov(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) cov[i * n + j] += Q[i * n + k] * sigmas[k] * sigmas[k] * Q[j * n + k];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) cov[i * n + j] = cov[j * n + i] = 0.5 * (cov[i * n + j] + cov[j * n + i]);
  return gaussian_cov(std::move(cov), amplitude);
}

Density Density::bump(int n, double T, double amplitude) {
  if (!(T > 0.0)) throw DomainError("bump density: T must be positive");
  const double T2 = T * T;
  auto radial = [amplitude, T2](int j, double s) {
    const double u = s / T2;
    if (u >= 1.0) return 0.0;
    // F = A exp(g), g = 1 - 1/(1-u); Leibniz on F' = g' F.
    std::vector<double> F(j + 1), g(j + 1);
    const double w = 1.0 / (1.0 - u);
    double fact = 1.0;
    for (int i = 1; i <= j; ++i) {
      fact *= i;
      g[i] = -fact * std::pow(w, i + 1) / std::pow(T2, i);
    }
    F[0] = amplitude * std::exp(1.0 - w);
    for (int k = 1; k <= j; ++k) {
      double acc = 0.0;
      double binom = 1.0;
      for (int i = 0; i <= k - 1; ++i) {
        acc += binom * g[i + 1] * F[k - 1 - i];
        binom = binom * (k - 1 - i) / (i + 1);
      }
      F[k] = acc;
    }
    return F[j];
  };
  Density f(n, [radial](std::span<const double> x) {
    return radial(0, dot(x, x));
  }, "bump");
  f.radial_ = radial;
  f.isotropic_ = true;
  f.decay_ = {DecayKind::compact, T};
  f.scale_ = T;
  f.nonnegative_ = amplitude >= 0.0;
  f.params_ = {T, amplitude};
  return f;
}

Density Density::indicator(const StarBody& K, double value) {
  const int n = K.dim();
  auto Kc = K;
  Density f(n, [Kc, value](std::span<const double> x) { return Kc.contains(x) ? value : 0.0; },
            "indicator");
  f.support_ = K;
  f.decay_ = {DecayKind::compact, K.circumradius()};
  f.scale_ = K.circumradius();
  f.even_ = K.symmetric();
  f.nonnegative_ = value >= 0.0;
  f.smoothness_ = 64;
  f.params_ = {value};
  if (K.family() == BodyFamily::ball) {
    const double r = K.params()[0];
    f.isotropic_ = true;
    f.fourier_ = [n, r, value](std::span<const double> xi) {
      const double z = r * norm2(xi);
      if (z < 1e-8) return value * unit_ball_volume(n) * std::pow(r, n);
      return value * std::pow(2.0 * kPi, 0.5 * n) * std::pow(r, n) *
             std::cyl_bessel_j(0.5 * n, z) / std::pow(z, 0.5 * n);
    };
    f.profile_fn_ = [n, r, value](const Direction&) -> std::optional<Profile> {
      if (n == 1) return Profile::constant_compact(r, value);
      const double a = 0.5 * (n - 1);
      const double front = value * unit_ball_volume(n - 1);
      return Profile(
          [=](double t) {
            const double s = r * r - t * t;
            return s <= 0.0 ? 0.0 : front * std::pow(s, a);
          },
          64, {DecayKind::compact, r}, true, r, "ball_section",
          [=](int k) {
            if (k % 2) return 0.0;
            const int j = k / 2;
            const double sign = (j % 2) ? -1.0 : 1.0;
            return front * std::pow(r, 2.0 * a - 2.0 * j) * sign * binomial_general(a, j) *
                   std::tgamma(2.0 * j + 1.0);
          });
    };
  }
  return f;
}

Density Density::restrict_to(const Density& f, const StarBody& K) {
  if (f.dim() != K.dim()) throw DomainError("restrict_to: dimension mismatch");
  auto base = f.eval_;
  auto Kc = K;
  Density g(f.dim(), [base, Kc](std::span<const double> x) {
    return Kc.contains(x) ? base(x) : 0.0;
  }, f.family_ + "_restricted");
  g.support_ = K;
  g.decay_ = f.decay_;
  g.scale_ = f.scale_;
  g.even_ = f.even_ && K.symmetric();
  g.nonnegative_ = f.nonnegative_;
  g.params_ = f.params_;
  return g;
}

Density Density::scaled(const Density& f, double a, double c) {
  if (!(a > 0.0)) throw DomainError("scaled density: a must be positive");
  const int n = f.dim();
  auto base = f.eval_;
  Density g(n, [base, a, c, n](std::span<const double> x) {
    Scratch y;
    for (int i = 0; i < n; ++i) y[i] = a * x[i];
    return c * base(std::span<const double>(y.data(), n));
  }, f.family_);
  g.params_ = f.params_;
  g.even_ = f.even_;
  g.nonnegative_ = f.nonnegative_ && c >= 0.0;
  g.decay_ = f.decay_;
  if (g.decay_.kind == DecayKind::gaussian || g.decay_.kind == DecayKind::compact) g.decay_.param /= a;
  if (g.decay_.kind == DecayKind::exponential) g.decay_.param *= a;
  g.scale_ = f.scale_ / a;
  g.smoothness_ = f.smoothness_;
  if (f.support_) g.support_ = f.support_->dilated(1.0 / a);
  if (f.gaussian_) {
    auto cov = f.gaussian_->cov;
    for (double& v : cov) v /= a * a;
    g.gaussian_ = make_gaussian_form(std::move(cov), c * f.gaussian_->amplitude);
  }
  if (f.radial_) {
    auto r = f.radial_;
    g.radial_ = [r, a, c](int j, double s) { return c * std::pow(a * a, j) * r(j, a * a * s); };
    g.isotropic_ = true;
  }
  if (f.fourier_) {
    auto F = f.fourier_;
    g.fourier_ = [F, a, c, n](std::span<const double> xi) {
      Scratch y;
      for (int i = 0; i < n; ++i) y[i] = xi[i] / a;
      return c * std::pow(a, -n) * F(std::span<const double>(y.data(), n));
    };
  }
  if (f.profile_fn_) {
    auto P = f.profile_fn_;
    g.profile_fn_ = [P, a, c, n](const Direction& xi) -> std::optional<Profile> {
      auto p = P(xi);
      if (!p) return std::nullopt;
      return p->scaled(a).times(c * std::pow(a, 1 - n));
    };
  }
  return g;
}

Density Density::zero(int n) {
  Density f(n, [](std::span<const double>) { return 0.0; }, "zero");
  f.decay_ = {DecayKind::compact, 1.0};
  f.isotropic_ = true;
  f.radial_ = [](int, double) { return 0.0; };
  f.fourier_ = [](std::span<const double>) { return 0.0; };
  f.profile_fn_ = [](const Direction&) -> std::optional<Profile> { return Profile::zero(); };
  return f;
}

}  // namespace fracradon
