// Serial reference against the OpenMP version of each hot loop.

#include <cmath>
#include <complex>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracradon/density.hpp"
#include "fracradon/field.hpp"
#include "fracradon/kernels.hpp"

using namespace fracradon;

namespace {

std::vector<double> ramp(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.37 * i) + 1.5;
  return v;
}

void BM_direct_convolution_serial(benchmark::State& st) {
  const int M = static_cast<int>(st.range(0));
  const auto f = ramp(static_cast<std::size_t>(M) * M);
  const auto k = ramp(static_cast<std::size_t>(2 * M - 1) * (2 * M - 1));
  std::vector<double> out(f.size());
  for (auto _ : st) {
    direct_convolution_serial(2, M, f.data(), k.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_direct_convolution_omp(benchmark::State& st) {
  const int M = static_cast<int>(st.range(0));
  const auto f = ramp(static_cast<std::size_t>(M) * M);
  const auto k = ramp(static_cast<std::size_t>(2 * M - 1) * (2 * M - 1));
  std::vector<double> out(f.size());
  for (auto _ : st) {
    direct_convolution_omp(2, M, f.data(), k.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Omp>
void BM_apply_multiplier(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  std::vector<std::complex<double>> data(n, {1.0, 0.5});
  const auto mult = ramp(n);
  for (auto _ : st) {
    if constexpr (Omp) {
      apply_multiplier_omp(data.data(), mult.data(), n);
    } else {
      apply_multiplier_serial(data.data(), mult.data(), n);
    }
    benchmark::DoNotOptimize(data.data());
  }
}

template <bool Omp>
void BM_map_indices(benchmark::State& st) {
  const long n = st.range(0);
  std::vector<double> out(n);
  auto fn = [](long i) { return std::exp(-1e-4 * static_cast<double>(i)) * std::cos(0.1 * i); };
  for (auto _ : st) {
    if constexpr (Omp) {
      map_indices_omp(n, fn, out.data());
    } else {
      map_indices_serial(n, fn, out.data());
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Omp>
void BM_riesz_convolution(benchmark::State& st) {
  const GridField f = sample(Density::gaussian(2), 8.0, static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto g = Omp ? riesz_convolution_direct(f, 1.0, SingularWeight::zeta_corrected, true)
                 : riesz_convolution_direct(f, 1.0, SingularWeight::zeta_corrected, false);
    benchmark::DoNotOptimize(g.data().data());
  }
}

}  // namespace

BENCHMARK(BM_direct_convolution_serial)->Arg(16)->Arg(32);
BENCHMARK(BM_direct_convolution_omp)->Arg(16)->Arg(32);
BENCHMARK(BM_apply_multiplier<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_apply_multiplier<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_map_indices<false>)->Arg(1 << 16);
BENCHMARK(BM_map_indices<true>)->Arg(1 << 16);
BENCHMARK(BM_riesz_convolution<false>)->Arg(32);
BENCHMARK(BM_riesz_convolution<true>)->Arg(32);

BENCHMARK_MAIN();
