// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lph/kernels.hpp"

namespace k = lph::kernels;

namespace {

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<double> grid(std::size_t n, double lo, double hi) {
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return e;
}

template <bool Omp>
void BM_inertia(benchmark::State& state) {
  const auto d = random_values(static_cast<std::size_t>(state.range(0)));
  const auto e = grid(256, -3.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Omp ? k::omp::inertia_counts(d, e) : k::serial::inertia_counts(d, e));
  }
}

template <bool Omp>
void BM_lyapunov(benchmark::State& state) {
  const auto v = random_values(static_cast<std::size_t>(state.range(0)));
  const auto e = grid(256, -3.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Omp ? k::omp::lyapunov_sweep(v, e) : k::serial::lyapunov_sweep(v, e));
  }
}

template <bool Omp>
void BM_discriminant(benchmark::State& state) {
  const auto v = random_values(64);
  const auto e = grid(static_cast<std::size_t>(state.range(0)), -3.0, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Omp ? k::omp::discriminant_grid(v, e) : k::serial::discriminant_grid(v, e));
  }
}

template <bool Omp>
void BM_phase_sum(benchmark::State& state) {
  const auto v = random_values(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Omp ? k::omp::phase_sum(v, -1000, 97) : k::serial::phase_sum(v, -1000, 97));
  }
}

}  // namespace

BENCHMARK(BM_inertia<false>)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_inertia<true>)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_lyapunov<false>)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_lyapunov<true>)->Arg(1 << 12)->Arg(1 << 15)->UseRealTime();
BENCHMARK(BM_discriminant<false>)->Arg(1 << 10)->Arg(1 << 14)->UseRealTime();
BENCHMARK(BM_discriminant<true>)->Arg(1 << 10)->Arg(1 << 14)->UseRealTime();
BENCHMARK(BM_phase_sum<false>)->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_phase_sum<true>)->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();

BENCHMARK_MAIN();
