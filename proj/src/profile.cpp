#include "fracradon/profile.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>

#include "fracradon/error.hpp"
#include "fracradon/quadrature.hpp"

namespace fracradon {

namespace {

constexpr int kAnalyticSmoothness = 64;

double factorial(int k) { return std::tgamma(k + 1.0); }

// Power-series coefficients of exp(-s/(1-s)) in s (j b_j = -sum_i i b_{j-i}).
double bump_series_coeff(int j) {
  static std::mutex mu;
  static std::vector<double> b = {1.0};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(b.size()) <= j) {
    const int jj = static_cast<int>(b.size());
    double acc = 0.0;
    for (int i = 1; i <= jj; ++i) acc -= i * b[jj - i];
    b.push_back(acc / jj);
  }
  return b[j];
}

}  // namespace

double Decay::cutoff() const {
  switch (kind) {
    case DecayKind::gaussian:
      return 9.0 * param;
    case DecayKind::exponential:
      return 37.0 / param;
    case DecayKind::compact:
      return param;
    case DecayKind::polynomial:
      return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

std::string Decay::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DecayKind::gaussian:
      os << "gaussian(" << param << ")";
      break;
    case DecayKind::exponential:
      os << "exponential(" << param << ")";
      break;
    case DecayKind::polynomial:
      os << "polynomial(" << param << ")";
      break;
    case DecayKind::compact:
      os << "compact(" << param << ")";
      break;
  }
  return os.str();
}

Profile::Profile(Fn eval, int smoothness_m, Decay decay, bool is_even, double scale,
                 std::string family, DerivFn derivative)
    : eval_(std::move(eval)),
      smoothness_m_(smoothness_m),
      decay_(decay),
      is_even_(is_even),
      scale_(scale),
      family_(std::move(family)),
      derivative_(std::move(derivative)) {
  if (smoothness_m_ < 1) throw DomainError("Profile: smoothness_m must be >= 1");
  if (!(scale_ > 0.0)) throw DomainError("Profile: scale must be positive");
  if (!(decay_.param > 0.0)) throw DomainError("Profile: decay parameter must be positive");
}

Profile Profile::gaussian(double sigma, double amplitude) {
  if (!(sigma > 0.0)) throw DomainError("gaussian profile: sigma must be positive");
  return Profile(
      [=](double t) { return amplitude * std::exp(-0.5 * t * t / (sigma * sigma)); },
      kAnalyticSmoothness, {DecayKind::gaussian, sigma}, true, sigma, "gaussian",
      [=](int k) {
        if (k % 2) return 0.0;
        const int j = k / 2;
        const double sign = (j % 2) ? -1.0 : 1.0;
        return amplitude * sign * factorial(2 * j) /
               (factorial(j) * std::pow(2.0, j) * std::pow(sigma, 2 * j));
      });
}

Profile Profile::exponential(double rate, double amplitude) {
  if (!(rate > 0.0)) throw DomainError("exponential profile: rate must be positive");
  return Profile([=](double t) { return amplitude * std::exp(-rate * t); }, kAnalyticSmoothness,
                 {DecayKind::exponential, rate}, false, 1.0 / rate, "exponential",
                 [=](int k) { return amplitude * std::pow(-rate, k); });
}

Profile Profile::cauchy(double gamma, double amplitude) {
  if (!(gamma > 0.0)) throw DomainError("cauchy profile: gamma must be positive");
  return Profile(
      [=](double t) { return amplitude / (1.0 + (t / gamma) * (t / gamma)); },
      kAnalyticSmoothness, {DecayKind::polynomial, 2.0}, true, gamma, "cauchy", [=](int k) {
        if (k % 2) return 0.0;
        const int j = k / 2;
        const double sign = (j % 2) ? -1.0 : 1.0;
        return amplitude * sign * factorial(2 * j) / std::pow(gamma, 2 * j);
      });
}

Profile Profile::bump(double T, double amplitude) {
  if (!(T > 0.0)) throw DomainError("bump profile: T must be positive");
  return Profile(
      [=](double t) {
        const double s = (t / T) * (t / T);
        if (s >= 1.0) return 0.0;
        return amplitude * std::exp(-s / (1.0 - s));
      },
      kAnalyticSmoothness, {DecayKind::compact, T}, true, T, "bump", [=](int k) {
        if (k % 2) return 0.0;
        const int j = k / 2;
        return amplitude * bump_series_coeff(j) * factorial(2 * j) / std::pow(T, 2 * j);
      });
}

Profile Profile::constant_compact(double T, double value) {
  if (!(T > 0.0)) throw DomainError("constant profile: T must be positive");
  return Profile([=](double t) { return std::abs(t) <= T ? value : 0.0; }, kAnalyticSmoothness,
                 {DecayKind::compact, T}, true, T, "constant",
                 [=](int k) { return k == 0 ? value : 0.0; });
}

Profile Profile::tabulated(const std::vector<double>& t, const std::vector<double>& phi,
                           bool is_even) {
  if (t.size() != phi.size() || t.size() < 4) {
    throw DomainError("tabulated profile: need >= 4 matching (t, phi) pairs");
  }
  if (std::abs(t.front()) > 1e-14) throw DomainError("tabulated profile: first node must be t = 0");
  const double h = (t.back() - t.front()) / (t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs(t[i] - t[0] - i * h) > 1e-9 * std::max(1.0, t.back())) {
      throw DomainError("tabulated profile: nodes must be uniformly spaced");
    }
  }
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  auto spline = is_even ? std::make_shared<Spline>(phi.begin(), phi.end(), 0.0, h, 0.0)
                        : std::make_shared<Spline>(phi.begin(), phi.end(), 0.0, h);
  const double T = t.back();
  return Profile(
      [spline, T](double x) {
        x = std::abs(x);
        return x > T ? 0.0 : (*spline)(x);
      },
      2, {DecayKind::compact, T}, is_even, std::max(4.0 * h, 1e-3 * T), "tabulated");
}

Profile Profile::zero() {
  return Profile([](double) { return 0.0; }, kAnalyticSmoothness, {DecayKind::compact, 1.0}, true,
                 1.0, "zero", [](int) { return 0.0; });
}

double Profile::exact_derivative(int k) const {
  if (!derivative_) throw DomainError("profile has no exact derivatives");
  return derivative_(k);
}

Profile Profile::scaled(double a) const {
  if (!(a > 0.0)) throw DomainError("Profile::scaled: a must be positive");
  Decay d = decay_;
  if (d.kind == DecayKind::gaussian || d.kind == DecayKind::compact) d.param /= a;
  if (d.kind == DecayKind::exponential) d.param *= a;
  DerivFn der;
  if (derivative_) {
    auto base = derivative_;
    der = [base, a](int k) { return std::pow(a, k) * base(k); };
  }
  auto base_eval = eval_;
  return Profile([base_eval, a](double t) { return base_eval(a * t); }, smoothness_m_, d, is_even_,
                 scale_ / a, family_, der);
}

Profile Profile::times(double c) const {
  DerivFn der;
  if (derivative_) {
    auto base = derivative_;
    der = [base, c](int k) { return c * base(k); };
  }
  auto base_eval = eval_;
  return Profile([base_eval, c](double t) { return c * base_eval(t); }, smoothness_m_, decay_,
                 is_even_, scale_, family_, der);
}

namespace {

// One finite-difference estimate of phi^{(k)}(0) at step h. Central stencils
// on the even extension have an h^2 error series, forward stencils an h series.
double fd_stencil(const Profile& phi, int k, double h, bool central) {
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = ((k - j) % 2) ? -1.0 : 1.0;
    const double x = central ? (j - 0.5 * k) * h : j * h;
    acc += sign * binom * phi(std::abs(x));
    binom = binom * (k - j) / (j + 1);
  }
  return acc / std::pow(h, k);
}

// Ridders' extrapolation of fd_stencil as h -> 0.
double fd_derivative(const Profile& phi, int k) {
  constexpr int kTab = 12;
  constexpr double kCon = 1.4;
  const bool central = phi.is_even();
  const double con_pow = central ? kCon * kCon : kCon;
  double h = 0.5 * phi.scale();
  double a[kTab][kTab];
  double best = 0.0;
  double err = std::numeric_limits<double>::infinity();
  double previous = std::numeric_limits<double>::quiet_NaN();
  a[0][0] = fd_stencil(phi, k, h, central);
  for (int i = 1; i < kTab; ++i) {
    h /= kCon;
    a[0][i] = fd_stencil(phi, k, h, central);
    double fac = con_pow;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con_pow;
      const double e =
          std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        previous = best;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }
  const double scale_k = std::pow(phi.scale(), -k) * std::max(1.0, std::abs(phi(0.0)));
  if (!(err <= 1e-5 * std::max(std::abs(best), scale_k))) {
    throw ConvergenceError("taylor_coeffs_at_zero: finite differences for order " +
                               std::to_string(k) + " did not converge",
                           best, previous);
  }
  return best;
}

double coefficient(const Profile& phi, int k) {
  if (phi.is_even() && k % 2 == 1) return 0.0;
  if (phi.has_exact_derivatives()) return phi.exact_derivative(k);
  if (k == 0) return phi(0.0);
  if (k > kMaxFiniteDifferenceOrder) {
    throw DomainError("taylor_coeffs_at_zero: order " + std::to_string(k) +
                      " exceeds the finite-difference cap; supply exact derivatives");
  }
  return fd_derivative(phi, k);
}

double taylor_poly(const std::vector<double>& c, double t) {
  double acc = 0.0;
  double tk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    acc += c[k] * tk / factorial(static_cast<int>(k));
    tk *= t;
  }
  return acc;
}

// Width of the innermost piece handled by the Taylor remainder series.
double series_split(const Profile& phi) {
  double tau = 0.05 * std::min(1.0, phi.scale());
  if (phi.decay().kind == DecayKind::compact) tau = std::min(tau, 0.5 * phi.decay().param);
  return tau;
}

// sum_{k >= first} c_k tau^{k+shift} / (k! (k+shift)) with shift = -q.
// Exact coefficients are summed to convergence, finite-difference ones up to the cap.
double remainder_series(const Profile& phi, int first, double shift, double tau) {
  const int last = phi.has_exact_derivatives()
                       ? first + 80
                       : std::min(kMaxFiniteDifferenceOrder, phi.smoothness_m());
  double sum = 0.0;
  int small = 0;
  for (int k = first; k <= last; ++k) {
    // These terms carry tau^{k-q}; a rough finite-difference estimate suffices.
    double c;
    try {
      c = coefficient(phi, k);
    } catch (const ConvergenceError& e) {
      c = e.last();
    }
    const double term = c * std::pow(tau, k + shift) / (factorial(k) * (k + shift));
    sum += term;
    if (c != 0.0) {
      small = std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) ? small + 1 : 0;
      if (small >= 2) break;
    }
  }
  return sum;
}

QuadOptions tight() {
  QuadOptions o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-13;
  o.max_intervals = 4000;
  return o;
}

// int_a^inf t^{-1-q} phi(t) dt with a >= 1 (t^{-p} phi for p = 1+q).
double tail_integral(const Profile& phi, double a, double p) {
  const Decay& d = phi.decay();
  auto w = [&](double t) { return std::pow(t, -p) * phi(t); };
  if (d.kind == DecayKind::polynomial) {
    // t = 1/u maps [a, inf) onto (0, 1/a].
    auto g = [&](double u) { return u <= 0.0 ? 0.0 : std::pow(u, p - 2.0) * phi(1.0 / u); };
    return integrate(g, 0.0, 1.0 / a, tight()).value;
  }
  const double T = d.cutoff();
  if (T <= a) return 0.0;
  std::vector<double> br = {a};
  for (double x = 2.0 * a; x < T; x *= 2.0) br.push_back(x);
  br.push_back(T);
  return integrate_pieces(w, br, tight()).value;
}

void check_tail(const Profile& phi, double p) {
  if (phi.decay().kind == DecayKind::polynomial && !(phi.decay().param + p - 1.0 > 0.0)) {
    throw DomainError("frac_derivative: tail integral diverges for this polynomial decay");
  }
}

}  // namespace

std::vector<double> taylor_coeffs_at_zero(const Profile& phi, int m) {
  if (m < 0) throw DomainError("taylor_coeffs_at_zero: m must be >= 0");
  if (m > phi.smoothness_m()) throw DomainError("taylor_coeffs_at_zero: m exceeds smoothness");
  std::vector<double> c(m);
  for (int k = 0; k < m; ++k) c[k] = coefficient(phi, k);
  return c;
}

double frac_derivative_at_zero(const Profile& phi, double q, int m) {
  if (!std::isfinite(q) || !(q > -1.0)) throw DomainError("frac_derivative_at_zero: q must be > -1");
  const FracOrder order(q);
  if (order.near_odd_integer(1e-6)) {
    throw OddOrderError("frac_derivative_at_zero: q is within 1e-6 of an odd integer; use "
                        "frac_derivative_odd");
  }
  const double r = std::round(q);
  if (r >= 0.0 && std::abs(q - r) < 1e-9) {
    const int k = static_cast<int>(r);
    if (k > phi.smoothness_m()) throw DomainError("frac_derivative_at_zero: order exceeds smoothness");
    return coefficient(phi, k);  // k even, so (-1)^k = 1
  }
  if (m <= 0) m = static_cast<int>(std::floor(q)) + 2;
  if (!(q < m)) throw DomainError("frac_derivative_at_zero: requires q < m");
  if (m > phi.smoothness_m()) throw DomainError("frac_derivative_at_zero: m exceeds smoothness");
  check_tail(phi, 1.0 + q);

  const auto c = taylor_coeffs_at_zero(phi, m);
  double poly = 0.0;
  for (int k = 0; k < m; ++k) poly += c[k] / (factorial(k) * (k - q));

  const double tau = series_split(phi);
  const double inner = remainder_series(phi, m, -q, tau);

  auto reg = [&](double t) { return std::pow(t, -1.0 - q) * (phi(t) - taylor_poly(c, t)); };
  std::vector<double> br = {tau};
  for (double x = 2.0 * tau; x < 1.0; x *= 2.0) br.push_back(x);
  br.push_back(1.0);
  if (phi.decay().kind == DecayKind::compact) {
    const double T = phi.decay().param;
    if (T > tau && T < 1.0) {
      br.push_back(T);
      std::sort(br.begin(), br.end());
    }
  }
  const double middle = integrate_pieces(reg, br, tight()).value;
  const double tail = tail_integral(phi, 1.0, 1.0 + q);
  return (poly + inner + middle + tail) / gamma(-q);
}

double frac_derivative_unregularized(const Profile& phi, double q) {
  if (!(q > -1.0 && q < 0.0)) throw DomainError("frac_derivative_unregularized: requires -1 < q < 0");
  check_tail(phi, 1.0 + q);
  // s = t^{-q} turns int_0^1 t^{-1-q} phi dt into (1/|q|) int_0^1 phi(s^{-1/q}) ds.
  auto g = [&](double s) { return phi(std::pow(s, -1.0 / q)); };
  const double head = integrate(g, 0.0, 1.0, tight()).value / (-q);
  return (head + tail_integral(phi, 1.0, 1.0 + q)) / gamma(-q);
}

double frac_derivative_odd(const Profile& phi, int k) {
  if (k < 1) throw DomainError("frac_derivative_odd: k must be >= 1");
  if (!phi.is_even()) throw DomainError("frac_derivative_odd: profile must be even");
  if (2 * k > phi.smoothness_m()) throw DomainError("frac_derivative_odd: smoothness below 2k");
  check_tail(phi, 2.0 * k);
  const auto c = taylor_coeffs_at_zero(phi, 2 * k);
  const double tau = series_split(phi);

  // [0, tau]: sum_{i >= 2k} c_i tau^{i-2k+1} / (i! (i-2k+1)).
  const double inner = remainder_series(phi, 2 * k, 1.0 - 2.0 * k, tau);
  auto reg = [&](double t) { return std::pow(t, -2.0 * k) * (phi(t) - taylor_poly(c, t)); };
  std::vector<double> br = {tau};
  for (double x = 2.0 * tau; x < 1.0; x *= 2.0) br.push_back(x);
  br.push_back(1.0);
  if (phi.decay().kind == DecayKind::compact) {
    const double T = phi.decay().param;
    if (T > tau && T < 1.0) {
      br.push_back(T);
      std::sort(br.begin(), br.end());
    }
  }
  const double middle = integrate_pieces(reg, br, tight()).value;
  double tail = tail_integral(phi, 1.0, 2.0 * k);
  for (int j = 0; j < k; ++j) tail -= c[2 * j] / (factorial(2 * j) * (2.0 * k - 2.0 * j - 1.0));
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * factorial(2 * k - 1) * (inner + middle + tail);
}

double frac_derivative_theorem(const Profile& phi, double q) {
  const FracOrder order(q);
  if (order.is_odd_integer()) return frac_derivative_odd(phi, order.odd_k());
  const double r = std::round(q);
  if (r >= 0.0 && std::abs(q - r) < 1e-9) {
    // cos(pi q / 2) = (-1)^{q/2} at even integers.
    const double sign = (static_cast<long>(r) / 2) % 2 ? -1.0 : 1.0;
    return sign * frac_derivative_at_zero(phi, q);
  }
  return frac_derivative_at_zero(phi, q) / std::cos(0.5 * kPi * q);
}

double gaussian_frac_derivative_closed_form(double q) {
  const double r = std::round(q);
  if (r >= 0.0 && std::abs(q - r) < 1e-9) {
    const int k = static_cast<int>(r);
    if (k % 2) return 0.0;
    const int j = k / 2;
    const double sign = (j % 2) ? -1.0 : 1.0;
    return sign * factorial(2 * j) / (factorial(j) * std::pow(2.0, j));
  }
  return std::pow(2.0, -0.5 * q - 1.0) * gamma(-0.5 * q) / gamma(-q);
}

}  // namespace fracradon
