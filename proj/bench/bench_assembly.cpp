// Serial vs OpenMP assembly of the layer operator rows.

#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "steklov/assembly.hpp"

using namespace steklov;

namespace {

BoundaryDiscretization mesh(int n) {
  return discretize(DiskPairDomain::make(0.5, DomainMode::Union), n);
}

std::vector<int> all_rows(const BoundaryDiscretization& b) {
  std::vector<int> rows(b.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

void BM_AssembleSerial(benchmark::State& state) {
  const BoundaryDiscretization b = mesh(static_cast<int>(state.range(0)));
  const std::vector<int> rows = all_rows(b);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_layer_rows_serial(b, rows));
  state.counters["nodes"] = b.size();
}

void BM_AssembleOpenMP(benchmark::State& state) {
  const BoundaryDiscretization b = mesh(static_cast<int>(state.range(0)));
  const std::vector<int> rows = all_rows(b);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_layer_rows(b, rows));
  state.counters["nodes"] = b.size();
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleOpenMP)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
