#include <benchmark/benchmark.h>

#include "hkt/autom.hpp"
#include "hkt/cstruct.hpp"
#include "hkt/spaces.hpp"

using namespace hkt;

namespace {

void BM_BuildRep(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix_rep(Family::A, rank, rank % 2));
}
BENCHMARK(BM_BuildRep)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_StructureConstants(benchmark::State& state) {
  const auto rep = build_matrix_rep(Family::A, static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(rep));
  state.SetComplexityN(rep.dimension());
}
BENCHMARK(BM_StructureConstants)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond)->Complexity();

void BM_BasicRoots(benchmark::State& state) {
  const auto rep = build_matrix_rep(Family::D, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(basic_roots(rep));
}
BENCHMARK(BM_BasicRoots)->Unit(benchmark::kMillisecond);

void BM_Integrability(benchmark::State& state) {
  const auto rep = build_matrix_rep(Family::B, 3, 3);
  const auto f = structure_constants(rep);
  const auto chain = basic_roots(rep);
  const RMatrix i = canonical_I(rep, build_pairing(rep, chain.flat())).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(integrability_residual(i, f));
}
BENCHMARK(BM_Integrability)->Unit(benchmark::kMicrosecond);

void BM_Nijenhuis(benchmark::State& state) {
  const auto rep = build_matrix_rep(Family::A, 2, 0);
  const auto f = structure_constants(rep);
  const auto chain = basic_roots(rep);
  const RMatrix i = canonical_I(rep, build_pairing(rep, chain.flat())).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(nijenhuis_at_origin(i, f, 1e-4));
}
BENCHMARK(BM_Nijenhuis)->Unit(benchmark::kMillisecond);

void BM_VerifyGroup(benchmark::State& state, SpaceSpec spec) {
  for (auto _ : state) benchmark::DoNotOptimize(verify(spec));
}
BENCHMARK_CAPTURE(BM_VerifyGroup, SU3, SpaceSpec{{{Family::A, 2}}, 0, {}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyGroup, SU5, SpaceSpec{{{Family::A, 4}}, 0, {}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyGroup, Spin7xU1_3, SpaceSpec{{{Family::B, 3}}, 3, {}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyGroup, Spin8xU1_4, SpaceSpec{{{Family::D, 4}}, 4, {}})->Unit(benchmark::kMillisecond);

void BM_CatalogA3(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& spec : enumerate_quotients({Family::A, 3}, 1)) benchmark::DoNotOptimize(verify(spec));
}
BENCHMARK(BM_CatalogA3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
