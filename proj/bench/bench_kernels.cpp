// Serial reference vs OpenMP kernels, plus the full right-hand side.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mswave/model.hpp"
#include "mswave/parallel_kernels.hpp"

namespace k = mswave::kernels;

namespace {

std::vector<double> wave(std::size_t n, double phase) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = 0.1 * std::sin(2.0 * std::numbers::pi * (static_cast<double>(j) / n + phase));
  return v;
}

k::Exec exec_of(const benchmark::State& state) { return state.range(1) ? k::Exec::Parallel : k::Exec::Serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) ? "omp" : "serial");
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NonlocalProducts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = wave(n, 0.0);
  const auto ux = wave(n, 0.25);
  std::vector<double> t(n), g(n);
  const k::NonlocalCoefficients c{0.35, 0.25, -0.00125, 4.7e-5, -0.0146};
  for (auto _ : state) {
    k::nonlocal_products(exec_of(state), u, ux, c, t, g);
    benchmark::DoNotOptimize(g.data());
  }
  label(state);
}

void BM_DirectProducts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = wave(n, 0.0);
  const auto ux = wave(n, 0.25);
  const auto uxx = wave(n, 0.5);
  const auto uxxx = wave(n, 0.75);
  std::vector<double> out(n);
  const k::DirectCoefficients c{0.15, -0.00375, 1.9e-4, 0.029};
  for (auto _ : state) {
    k::direct_products(exec_of(state), u, ux, uxx, uxxx, c, out);
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void BM_MultiplySpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)) / 2 + 1;
  std::vector<k::Complex> in(n, {1.0, -0.5}), mult(n, {0.0, 2.0}), out(n);
  for (auto _ : state) {
    k::multiply_spectrum(exec_of(state), in, mult, out);
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void BM_Rk4Combine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = wave(n, 0.0);
  const auto a = wave(n, 0.1);
  const auto b = wave(n, 0.2);
  const auto c = wave(n, 0.3);
  const auto d = wave(n, 0.4);
  std::vector<double> out(n);
  for (auto _ : state) {
    k::rk4_combine(exec_of(state), u, a, b, c, d, 1e-4, out);
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void BM_RhsNonlocal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  mswave::RhsEvaluator rhs(mswave::make_grid(n), mswave::Params{0.1, 1.0}, {mswave::Dealias::TwoThirds, exec_of(state)});
  const auto u = wave(static_cast<std::size_t>(n), 0.0);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto _ : state) {
    rhs.nonlocal(u, out);
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {1L << 10, 1L << 13, 1L << 16, 1L << 20})
    for (long par : {0L, 1L}) b->Args({n, par});
}

}  // namespace

BENCHMARK(BM_NonlocalProducts)->Apply(sizes);
BENCHMARK(BM_DirectProducts)->Apply(sizes);
BENCHMARK(BM_MultiplySpectrum)->Apply(sizes);
BENCHMARK(BM_Rk4Combine)->Apply(sizes);
BENCHMARK(BM_RhsNonlocal)->Apply(sizes);

BENCHMARK_MAIN();
