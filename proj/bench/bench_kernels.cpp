// Serial reference kernels against their OpenMP versions on a reduced-path
// graph of Thompson's group.

#include <benchmark/benchmark.h>

#include <vector>

#include "cogrowth/cayley.hpp"
#include "cogrowth/kernels.hpp"
#include "cogrowth/spectral.hpp"

namespace {

using namespace cogrowth;

const TruncatedGraph& graph() {
  static const TruncatedGraph g = build_H(Group(GroupId::parse("thompson")), 1'000'000);
  return g;
}

void BM_Spmv(benchmark::State& state, Backend backend) {
  const auto& g = graph();
  const std::size_t n = g.size();
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    spmv(backend, g.adjacency, n, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.adjacency.edges()));
}

void BM_Dot(benchmark::State& state, Backend backend) {
  const std::size_t n = graph().size();
  std::vector<double> x(n, 0.5), y(n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dot(backend, x, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_Eigenvalue(benchmark::State& state, Backend backend) {
  const auto& g = graph();
  PowerOptions opts;
  opts.backend = backend;
  for (auto _ : state) benchmark::DoNotOptimize(dominant_eigenvalue(g, 2, opts).value);
}

BENCHMARK_CAPTURE(BM_Spmv, serial, Backend::Serial);
BENCHMARK_CAPTURE(BM_Spmv, openmp, Backend::OpenMP);
BENCHMARK_CAPTURE(BM_Dot, serial, Backend::Serial);
BENCHMARK_CAPTURE(BM_Dot, openmp, Backend::OpenMP);
BENCHMARK_CAPTURE(BM_Eigenvalue, serial, Backend::Serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_Eigenvalue, openmp, Backend::OpenMP)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
