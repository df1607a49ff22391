#include "fracradon/kernels.hpp"

#include <omp.h>

namespace fracradon {

std::vector<ChunkStats> run_chunks_serial(long chunks, const ChunkFn& fn) {
  std::vector<ChunkStats> out(chunks);
  for (long c = 0; c < chunks; ++c) out[c] = fn(c);
  return out;
}

std::vector<ChunkStats> run_chunks_omp(long chunks, const ChunkFn& fn) {
  std::vector<ChunkStats> out(chunks);
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < chunks; ++c) out[c] = fn(c);
  return out;
}

ChunkStats reduce_in_order(const std::vector<ChunkStats>& chunks) {
  ChunkStats total;
  for (const auto& c : chunks) {
    total.sum += c.sum;
    total.sumsq += c.sumsq;
    total.count += c.count;
  }
  return total;
}

void map_indices_serial(long count, const std::function<double(long)>& fn, double* out) {
  for (long i = 0; i < count; ++i) out[i] = fn(i);
}

void map_indices_omp(long count, const std::function<double(long)>& fn, double* out) {
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) out[i] = fn(i);
}

namespace {

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// out[x] for one output index; the inner sum runs in a fixed order.
double convolve_at(int n, int M, const double* f, const double* kernel, long x) {
  const long N = ipow(M, n);
  const long side = 2L * M - 1;
  int xi[16];
  long rem = x;
  for (int a = n - 1; a >= 0; --a) {
    xi[a] = static_cast<int>(rem % M);
    rem /= M;
  }
  double acc = 0.0;
  for (long y = 0; y < N; ++y) {
    if (f[y] == 0.0) continue;
    long r = y;
    long koff = 0;
    long stride = 1;
    for (int a = n - 1; a >= 0; --a) {
      const int ya = static_cast<int>(r % M);
      r /= M;
      koff += (xi[a] - ya + M - 1) * stride;
      stride *= side;
    }
    acc += kernel[koff] * f[y];
  }
  return acc;
}

}  // namespace

void direct_convolution_serial(int n, int M, const double* f, const double* kernel, double* out) {
  const long N = ipow(M, n);
  for (long x = 0; x < N; ++x) out[x] = convolve_at(n, M, f, kernel, x);
}

void direct_convolution_omp(int n, int M, const double* f, const double* kernel, double* out) {
  const long N = ipow(M, n);
#pragma omp parallel for schedule(static)
  for (long x = 0; x < N; ++x) out[x] = convolve_at(n, M, f, kernel, x);
}

void apply_multiplier_serial(std::complex<double>* data, const double* mult, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) data[i] *= mult[i];
}

void apply_multiplier_omp(std::complex<double>* data, const double* mult, std::size_t count) {
  const long N = static_cast<long>(count);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < N; ++i) data[i] *= mult[i];
}

namespace {

std::complex<double> twiddle_at(int n, int M, const std::complex<double>* tw, long idx) {
  std::complex<double> w = 1.0;
  for (int a = 0; a < n; ++a) {
    w *= tw[idx % M];
    idx /= M;
  }
  return w;
}

}  // namespace

void apply_axis_twiddle_serial(int n, int M, std::complex<double>* data,
                               const std::complex<double>* tw) {
  const long N = ipow(M, n);
  for (long i = 0; i < N; ++i) data[i] *= twiddle_at(n, M, tw, i);
}

void apply_axis_twiddle_omp(int n, int M, std::complex<double>* data,
                            const std::complex<double>* tw) {
  const long N = ipow(M, n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < N; ++i) data[i] *= twiddle_at(n, M, tw, i);
}

int worker_threads() { return omp_get_max_threads(); }

void set_worker_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace fracradon
