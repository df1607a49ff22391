#pragma once

// Hot loops, each with a serial reference and an OpenMP version that must
// produce bitwise-identical results (no cross-thread floating-point reductions).

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace fracradon {

/// Per-chunk Monte Carlo moments.
struct ChunkStats {
  double sum = 0.0;
  double sumsq = 0.0;
  long count = 0;
};

using ChunkFn = std::function<ChunkStats(long chunk)>;

std::vector<ChunkStats> run_chunks_serial(long chunks, const ChunkFn& fn);
std::vector<ChunkStats> run_chunks_omp(long chunks, const ChunkFn& fn);

/// Sums chunk moments in index order.
ChunkStats reduce_in_order(const std::vector<ChunkStats>& chunks);

/// out[i] = fn(i) for i in [0, count).
void map_indices_serial(long count, const std::function<double(long)>& fn, double* out);
void map_indices_omp(long count, const std::function<double(long)>& fn, double* out);

/// Direct linear convolution on an M^n grid:
///   out[x] = sum_y kernel[x - y] f[y],
/// kernel indexed by offsets in [-(M-1), M-1]^n stored row-major with side 2M-1.
void direct_convolution_serial(int n, int M, const double* f, const double* kernel, double* out);
void direct_convolution_omp(int n, int M, const double* f, const double* kernel, double* out);

/// data[i] *= mult[i].
void apply_multiplier_serial(std::complex<double>* data, const double* mult, std::size_t count);
void apply_multiplier_omp(std::complex<double>* data, const double* mult, std::size_t count);

/// Per-axis phase twiddle on an M^n row-major array: data[idx] *= prod_a tw[i_a].
void apply_axis_twiddle_serial(int n, int M, std::complex<double>* data,
                               const std::complex<double>* tw);
void apply_axis_twiddle_omp(int n, int M, std::complex<double>* data,
                            const std::complex<double>* tw);

/// Number of OpenMP worker threads in effect.
int worker_threads();
/// Sets the worker count (0 keeps the runtime default).
void set_worker_threads(int threads);

}  // namespace fracradon
