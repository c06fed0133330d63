#include <benchmark/benchmark.h>

#include "gtsp/edge_reduction.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/vertex_reduction.hpp"

namespace {

using namespace gtsp;

GtspInstance planar(std::size_t n) {
  return random_instance(7, n, n / 5, 100000, RandomMode::planar);
}

void vertex_reduction(benchmark::State& state, Execution execution) {
  const GtspInstance base = planar(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    GtspInstance work = base;
    IdMap map(work.n());
    auto result = reduce_vertices(work, map, {.execution = execution});
    benchmark::DoNotOptimize(result.removed.data());
  }
}

void edge_reduction(benchmark::State& state, Execution execution) {
  const GtspInstance base = planar(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    GtspInstance work = base;
    IdMap map(work.n());
    auto result = reduce_edges(work, map, {.execution = execution});
    benchmark::DoNotOptimize(result.removed_edges.data());
  }
}

void exact(benchmark::State& state, Execution execution) {
  const GtspInstance base =
      random_instance(3, 24, static_cast<std::size_t>(state.range(0)), 1000, RandomMode::uniform);
  for (auto _ : state) {
    auto tour = exact_solve(base, {.execution = execution});
    benchmark::DoNotOptimize(tour);
  }
}

}  // namespace

BENCHMARK_CAPTURE(vertex_reduction, serial, Execution::serial)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(vertex_reduction, parallel, Execution::parallel)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(edge_reduction, serial, Execution::serial)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(edge_reduction, parallel, Execution::parallel)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact, serial, Execution::serial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact, parallel, Execution::parallel)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
