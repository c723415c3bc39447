#include <benchmark/benchmark.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "gradflow/kernels.hpp"

using namespace gradflow;

namespace {

std::vector<double> field(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = std::sin(0.01 * static_cast<double>(j)) + 0.3;
  return u;
}

CoefficientTable table(std::size_t n, int degree) {
  CoefficientTable a;
  a.degree = degree;
  a.points = n;
  a.values.resize(static_cast<std::size_t>(degree) * n);
  for (std::size_t k = 0; k < a.values.size(); ++k) a.values[k] = 1.0 + 0.5 * std::cos(0.003 * static_cast<double>(k));
  return a;
}

template <auto Kernel>
void bm_laplacian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> u = field(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(u, out, 0.01, Boundary::periodic);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void bm_reaction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> u = field(n);
  const CoefficientTable a = table(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(u, a, LeadingTerm::power, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void bm_dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> u = field(n);
  const std::vector<double> v = field(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(u, v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void bm_max_abs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> u = field(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

constexpr std::int64_t kMin = 1 << 8;
constexpr std::int64_t kMax = 1 << 20;

}  // namespace

BENCHMARK(bm_laplacian<kernels::serial::laplacian>)->Name("laplacian/serial")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_laplacian<kernels::omp::laplacian>)->Name("laplacian/omp")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_reaction<kernels::serial::reaction>)->Name("reaction/serial")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_reaction<kernels::omp::reaction>)->Name("reaction/omp")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_dot<kernels::serial::dot>)->Name("dot/serial")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_dot<kernels::omp::dot>)->Name("dot/omp")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_max_abs<kernels::serial::max_abs>)->Name("max_abs/serial")->RangeMultiplier(8)->Range(kMin, kMax);
BENCHMARK(bm_max_abs<kernels::omp::max_abs>)->Name("max_abs/omp")->RangeMultiplier(8)->Range(kMin, kMax);

BENCHMARK_MAIN();
