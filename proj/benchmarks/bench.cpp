#include <benchmark/benchmark.h>

#include "cosetq/affine.hpp"
#include "cosetq/branching.hpp"
#include "cosetq/kostka.hpp"

using namespace cosetq;

namespace {

void BM_QBinomial(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(q_binomial(n, n / 2));
}
BENCHMARK(BM_QBinomial)->Arg(10)->Arg(20)->Arg(40);

// Fusion characters and Gaussian binomials are memoized per process, so after the first
// iteration these measure warm lookups plus the surrounding arithmetic.
void BM_FusionChar(benchmark::State& state) {
  const Composition m({0, 0, state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(fusion_char(m, 0, 12));
}
BENCHMARK(BM_FusionChar)->Arg(4)->Arg(8)->Arg(16);

void BM_KostkaFermionic(benchmark::State& state) {
  const RestrictedKostkaQuery q{3, 1, Composition({state.range(0), 1, 1})};
  for (auto _ : state) benchmark::DoNotOptimize(restricted_kostka_fermionic(q));
}
BENCHMARK(BM_KostkaFermionic)->Arg(2)->Arg(4)->Arg(6);

void BM_GradedComponent(benchmark::State& state) {
  ComponentCache::global().set_directory(std::nullopt);
  for (auto _ : state) {
    ComponentCache::global().clear_memory();
    benchmark::DoNotOptimize(graded_component_char({1, 3}, 1, state.range(0)));
  }
}
BENCHMARK(BM_GradedComponent)->Arg(8)->Arg(16)->Arg(24);

void BM_ClassicalCharacter(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classical_character({1, 3}, state.range(0), 8));
}
BENCHMARK(BM_ClassicalCharacter)->Arg(8)->Arg(16);

void BM_Branching(benchmark::State& state) {
  const CosetSpec spec{1, 2, 1, 2, 2};
  const auto method = static_cast<BranchingMethod>(state.range(0));
  for (auto _ : state) {
    ComponentCache::global().clear_memory();
    benchmark::DoNotOptimize(branching(spec, 12, method));
  }
  state.SetLabel(to_string(method));
}
BENCHMARK(BM_Branching)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
