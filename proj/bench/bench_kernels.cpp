// Serial reference vs OpenMP kernels for the quadrature oracle.
#include <benchmark/benchmark.h>

#include "rotor/eigenbases.hpp"
#include "rotor/harmonics.hpp"
#include "rotor/quadrature_kernels.hpp"

namespace {

using namespace rotor;

// A degree-j band-limited integrand with nontrivial pointwise cost.
SphereFunction test_function(int j) { return as_function(f_basis(HarmonicSpace(j)).vectors.front().state); }

void BM_TableSerial(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::table_serial(j, grid.points));
}

void BM_TableParallel(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::table_parallel(j, grid.points));
}

void BM_SampleSerial(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  const auto f = test_function(j);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sample_serial(f, grid.points));
}

void BM_SampleParallel(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  const auto f = test_function(j);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sample_parallel(f, grid.points));
}

void BM_ProjectSerial(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  const auto table = kernels::table_serial(j, grid.points);
  const auto samples = kernels::sample_serial(test_function(j), grid.points);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::project_serial(table, samples, grid.weights));
}

void BM_ProjectParallel(benchmark::State& st) {
  const int j = static_cast<int>(st.range(0));
  const auto grid = build_grid(j);
  const auto table = kernels::table_serial(j, grid.points);
  const auto samples = kernels::sample_serial(test_function(j), grid.points);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::project_parallel(table, samples, grid.weights));
}

}  // namespace

BENCHMARK(BM_TableSerial)->Arg(8)->Arg(20)->Arg(40);
BENCHMARK(BM_TableParallel)->Arg(8)->Arg(20)->Arg(40);
BENCHMARK(BM_SampleSerial)->Arg(8)->Arg(20)->Arg(40);
BENCHMARK(BM_SampleParallel)->Arg(8)->Arg(20)->Arg(40);
BENCHMARK(BM_ProjectSerial)->Arg(8)->Arg(20)->Arg(40);
BENCHMARK(BM_ProjectParallel)->Arg(8)->Arg(20)->Arg(40);

BENCHMARK_MAIN();
