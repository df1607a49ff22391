#pragma once

// Unit directions, hyperplane frames, deterministic sphere meshes and the
// seed-derivation scheme shared by every Monte Carlo routine.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fracradon {

/// Largest dimension supported (fixed-size scratch buffers).
inline constexpr int kMaxDim = 16;
using Scratch = std::array<double, kMaxDim>;

/// A unit vector in R^n.
class Direction {
 public:
  /// Normalizes `v`; throws DomainError on a zero or non-finite vector.
  explicit Direction(std::vector<double> v);
  static Direction axis(int n, int i);

  int dim() const { return static_cast<int>(v_.size()); }
  const std::vector<double>& components() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  std::span<const double> span() const { return v_; }

 private:
  std::vector<double> v_;
};

/// Orthonormal basis of xi^perp from the Householder reflector mapping e_1 to xi.
/// Row i is the image of e_{i+2}; rows are returned as n-1 vectors.
std::vector<std::vector<double>> hyperplane_frame(const Direction& xi);

/// Full orthogonal matrix Q (row-major, n x n) with Q e_1 = xi and columns
/// 2..n spanning xi^perp (the Householder reflector).
std::vector<double> householder_matrix(const Direction& xi);

/// Deterministic direction meshes: n = 1 gives {+1, -1}; n = 2 uniform angles;
/// n = 3 Fibonacci spiral; n >= 4 seeded uniform points.
std::vector<Direction> sphere_mesh(int n, int count, std::uint64_t seed = 0);

/// SplitMix64 step; used to derive independent per-chunk seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace fracradon
