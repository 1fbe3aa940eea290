#include "tiltsmith/fixtures.hpp"
#include "tiltsmith/modcat.hpp"
#include "tiltsmith/tilting.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tiltsmith;

namespace {

const char* kNames[] = {"c2", "a5", "a7", "a8"};

void BM_Rref(benchmark::State& state) {
  const FieldPtr F = FqField::builtin(9);
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(0, 8);
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<Fq>(d(rng));
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_Omega(benchmark::State& state) {
  const Fixture& f = fixture_by_name(kNames[state.range(0)]);
  for (auto _ : state)
    for (int a = 0; a < f.reg->count(); ++a) benchmark::DoNotOptimize(omega(f.reg->simple(a), 2, *f.reg));
  state.SetLabel(f.name);
}
BENCHMARK(BM_Omega)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_ConditionsAB(benchmark::State& state) {
  const Fixture& f = fixture_by_name(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(check_conditions_ab(f.collection));
  state.SetLabel(f.name);
}
BENCHMARK(BM_ConditionsAB)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BuildTilting(benchmark::State& state) {
  const Fixture& f = fixture_by_name(kNames[state.range(0)]);
  TiltingCaps caps;
  caps.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_tilting(f.collection, caps));
  state.SetLabel(f.name);
}
BENCHMARK(BM_BuildTilting)
    ->ArgsProduct({{0, 1, 2, 3}, {1, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_StalkSearch(benchmark::State& state) {
  const Fixture& f = fixture_by_name(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(stalk_search(f.reg, f.y_modules, 1, 4));
  state.SetLabel(f.name);
}
BENCHMARK(BM_StalkSearch)->DenseRange(1, 3)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
