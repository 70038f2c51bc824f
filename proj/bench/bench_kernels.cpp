// Serial against OpenMP-parallel versions of the lattice scan and the grid
// sweep. Arg 0 is serial, 1 parallel.

#include "shiftlab/families.hpp"
#include "shiftlab/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace shiftlab;

namespace {

void BM_KHyponormalPair(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const int k = static_cast<int>(state.range(1));
  const WeightField t = build_figure0({Scalar(1, 2), Scalar(1, 2)});
  for (auto _ : state) benchmark::DoNotOptimize(is_k_hyponormal_pair(t, k, 8, exec).status);
}
BENCHMARK(BM_KHyponormalPair)->ArgsProduct({{0, 1}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_ClassifyGrid(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const long n = 10;
  const std::function<std::string(std::size_t)> cell = [&](std::size_t i) {
    const Scalar a2 = Scalar(static_cast<long>(i / n) + 1, 2 * n + 2);
    const Scalar k2 = Scalar(static_cast<long>(i % n) + 1, n);
    return classify_figure0({a2, k2}, Exec::serial).label;
  };
  for (auto _ : state) benchmark::DoNotOptimize(map_points<std::string>(n * n, cell, parallel));
}
BENCHMARK(BM_ClassifyGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RandomTcSubnormal(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const auto inst = random_tc_instances(7, 100);
  const std::function<int(std::size_t)> run = [&](std::size_t i) {
    return static_cast<int>(power_subnormal(inst[i].tc, 2, 1).status);
  };
  for (auto _ : state) benchmark::DoNotOptimize(map_points<int>(inst.size(), run, parallel));
}
BENCHMARK(BM_RandomTcSubnormal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
