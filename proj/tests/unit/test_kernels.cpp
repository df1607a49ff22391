#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "fracradon/kernels.hpp"

using namespace fracradon;

namespace {

std::vector<double> ramp(std::size_t n, double s) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(s * i) + 1.1;
  return v;
}

}  // namespace

TEST_CASE("openmp kernels are bitwise equal to the serial references") {
  const int threads = worker_threads();
  for (int t : {1, 2, 3}) {
    set_worker_threads(t);
    for (int n : {1, 2, 3}) {
      const int M = n == 3 ? 6 : 10;
      std::size_t N = 1, K = 1;
      for (int a = 0; a < n; ++a) {
        N *= M;
        K *= 2 * M - 1;
      }
      const auto f = ramp(N, 0.37), k = ramp(K, 0.11);
      std::vector<double> a(N), b(N);
      direct_convolution_serial(n, M, f.data(), k.data(), a.data());
      direct_convolution_omp(n, M, f.data(), k.data(), b.data());
      CHECK(a == b);

      std::vector<std::complex<double>> c1(N), c2(N), tw(M);
      for (std::size_t i = 0; i < N; ++i) c1[i] = c2[i] = {f[i], -f[i]};
      for (int j = 0; j < M; ++j) tw[j] = std::polar(1.0, 0.3 * j);
      apply_axis_twiddle_serial(n, M, c1.data(), tw.data());
      apply_axis_twiddle_omp(n, M, c2.data(), tw.data());
      CHECK(c1 == c2);
      apply_multiplier_serial(c1.data(), f.data(), N);
      apply_multiplier_omp(c2.data(), f.data(), N);
      CHECK(c1 == c2);
    }
    auto fn = [](long i) { return std::exp(-0.01 * i); };
    std::vector<double> m1(500), m2(500);
    map_indices_serial(500, fn, m1.data());
    map_indices_omp(500, fn, m2.data());
    CHECK(m1 == m2);
    auto chunk = [](long c) {
      ChunkStats s;
      for (int i = 0; i < 100; ++i) {
        const double v = std::sin(c * 100.0 + i);
        s.sum += v;
        s.sumsq += v * v;
        ++s.count;
      }
      return s;
    };
    const auto r1 = reduce_in_order(run_chunks_serial(37, chunk));
    const auto r2 = reduce_in_order(run_chunks_omp(37, chunk));
    CHECK(r1.sum == r2.sum);
    CHECK(r1.sumsq == r2.sumsq);
    CHECK(r1.count == 3700);
  }
  set_worker_threads(threads);
}

TEST_CASE("direct convolution with a delta kernel is the identity") {
  const int M = 8;
  const auto f = ramp(M * M, 0.5);
  std::vector<double> k((2 * M - 1) * (2 * M - 1), 0.0), out(M * M);
  k[(M - 1) * (2 * M - 1) + (M - 1)] = 1.0;
  direct_convolution_serial(2, M, f.data(), k.data(), out.data());
  CHECK(out == f);
}
