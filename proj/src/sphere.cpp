#include "fracradon/sphere.hpp"

#include <cmath>
#include <random>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"

namespace fracradon {

Direction::Direction(std::vector<double> v) : v_(std::move(v)) {
  if (v_.empty() || static_cast<int>(v_.size()) > kMaxDim) {
    throw DomainError("Direction: dimension must be in [1, 16]");
  }
  const double r = norm2(v_);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Direction: zero or non-finite vector");
  for (double& x : v_) x /= r;
}

Direction Direction::axis(int n, int i) {
  std::vector<double> v(n, 0.0);
  v.at(i) = 1.0;
  return Direction(std::move(v));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> householder_matrix(const Direction& xi) {
  const int n = xi.dim();
  std::vector<double> Q(n * n, 0.0);
  for (int i = 0; i < n; ++i) Q[i * n + i] = 1.0;
  // H = I - 2 w w^T / (w^T w) with w = e_1 - xi maps e_1 to xi.
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = (i == 0 ? 1.0 : 0.0) - xi[i];
  const double ww = dot(w, w);
  if (ww < 1e-28) return Q;  // xi = e_1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q[i * n + j] -= 2.0 * w[i] * w[j] / ww;
  return Q;
}

std::vector<std::vector<double>> hyperplane_frame(const Direction& xi) {
  const int n = xi.dim();
  const auto Q = householder_matrix(xi);
  std::vector<std::vector<double>> frame(n - 1, std::vector<double>(n));
  for (int c = 1; c < n; ++c)
    for (int i = 0; i < n; ++i) frame[c - 1][i] = Q[i * n + c];
  return frame;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::vector<Direction> sphere_mesh(int n, int count, std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) throw DomainError("sphere_mesh: dimension must be in [1, 16]");
  if (count < 1) throw DomainError("sphere_mesh: count must be positive");
  std::vector<Direction> out;
  if (n == 1) {
    out.emplace_back(std::vector<double>{1.0});
    out.emplace_back(std::vector<double>{-1.0});
    return out;
  }
  out.reserve(count);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * i / count;
      out.emplace_back(std::vector<double>{std::cos(a), std::sin(a)});
    }
    return out;
  }
  if (n == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      out.emplace_back(std::vector<double>{r * std::cos(a), r * std::sin(a), z});
    }
    return out;
  }
  std::mt19937_64 rng(derive_seed(seed, 0x5ee));
  std::normal_distribution<double> normal;
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    if (norm2(v) > 1e-12) out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace fracradon
