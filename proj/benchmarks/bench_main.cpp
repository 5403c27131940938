#include <benchmark/benchmark.h>

#include <random>

#include "polyadica/chase.hpp"
#include "polyadica/duality.hpp"
#include "polyadica/io.hpp"
#include "polyadica/structure.hpp"
#include "polyadica/suite.hpp"
#include "polyadica/typespace.hpp"

using namespace polyadica;

namespace {

Theory shipped() { return parse_theory(read_file(std::string(POLYADICA_DATA_DIR) + "/theories/three_models.thy")); }

void BM_DualityRoundTrip(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_duality_roundtrip(state.range(0)));
}
BENCHMARK(BM_DualityRoundTrip)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SpecOfLargestLattices(benchmark::State& state) {
  const auto ls = small_lattices(state.range(0));
  for (auto _ : state) {
    for (const auto& l : ls) benchmark::DoNotOptimize(spec(l));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ls.size()));
}
BENCHMARK(BM_SpecOfLargestLattices)->DenseRange(2, 4);

void BM_BeckChevalleyExhaustive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_beck_chevalley(2, 2, 0, 1));
}
BENCHMARK(BM_BeckChevalleyExhaustive)->Unit(benchmark::kMillisecond);

void BM_SampledSquares(benchmark::State& state) {
  const auto table = make_hom_table(small_lattices(3));
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto sq = sample_lax_square(table, rng);
    benchmark::DoNotOptimize(has_interpolation(sq));
  }
}
BENCHMARK(BM_SampledSquares);

void BM_Frobenius(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_frobenius(state.range(0)));
}
BENCHMARK(BM_Frobenius)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_HeytingPushouts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_heyting_pushouts(state.range(0)));
}
BENCHMARK(BM_HeytingPushouts)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_EnumerateModels(benchmark::State& state) {
  const auto t = shipped();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_models(t, state.range(0)));
}
BENCHMARK(BM_EnumerateModels)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

// A growing theory: every P-element needs a fresh E-successor in P.
void BM_ChaseGrowing(benchmark::State& state) {
  const auto t = parse_theory("rel P/1\nrel E/2\naxiom grow: P(x) |- exists y. P(y) & E(x, y)\n");
  const auto start = parse_structure("carrier: a\nP: (a)\n", t.signature);
  const ChaseBudget budget{static_cast<std::size_t>(state.range(0)), 64, 256};
  for (auto _ : state) benchmark::DoNotOptimize(run_chase(t, start, budget));
}
BENCHMARK(BM_ChaseGrowing)->RangeMultiplier(4)->Range(16, 256);

void BM_RefuteShipped(benchmark::State& state) {
  const auto t = shipped();
  const auto q = parse_sequent("P(x) & Q(x) & P(y) & Q(y) |- x = y", t.signature);
  for (auto _ : state) benchmark::DoNotOptimize(refute(t, q, ChaseBudget{}));
}
BENCHMARK(BM_RefuteShipped);

void BM_BuiltinTypeSpace(benchmark::State& state) {
  for (auto _ : state) {
    const auto p = builtin_counterexample(state.range(0));
    benchmark::DoNotOptimize(check_polyadic_axioms(p));
  }
}
BENCHMARK(BM_BuiltinTypeSpace)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ApproxTypeSpace(benchmark::State& state) {
  const auto t = shipped();
  for (auto _ : state) benchmark::DoNotOptimize(approx_type_space(t, 2, 3, state.range(0)));
}
BENCHMARK(BM_ApproxTypeSpace)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
