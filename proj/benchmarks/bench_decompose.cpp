#include <benchmark/benchmark.h>

#include <random>

#include "gottcalc/abelian.hpp"
#include "gottcalc/decompose.hpp"
#include "gottcalc/oracle.hpp"
#include "gottcalc/suspension.hpp"

using namespace gottcalc;

static void BM_DecomposeIteratedLoop(benchmark::State& state) {
  const auto e = SpaceExpr::loop(SpaceExpr::atom("Y"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(e, 1));
}
BENCHMARK(BM_DecomposeIteratedLoop)->DenseRange(2, 12, 2);

static void BM_ClosedFormBouquet(benchmark::State& state) {
  const auto y = SpaceExpr::atom("Y");
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_bouquet(3, static_cast<int>(state.range(0)), 1, y));
}
BENCHMARK(BM_ClosedFormBouquet)->RangeMultiplier(2)->Range(2, 64);

static void BM_ShiftPolynomialTorus(benchmark::State& state) {
  const auto t = SpaceExpr::torus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shift_polynomial(t));
}
BENCHMARK(BM_ShiftPolynomialTorus)->RangeMultiplier(2)->Range(2, 32);

static void BM_SphereSplittingTorus(benchmark::State& state) {
  const auto t = SpaceExpr::torus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_splitting(t));
}
BENCHMARK(BM_SphereSplittingTorus)->DenseRange(2, 10, 2);

static void BM_Crosscheck(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<SpaceExpr> corpus;
  for (int i = 0; i < 16; ++i) corpus.push_back(random_query(rng, 3));
  const auto strategies = all_strategies();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(crosscheck(corpus[i++ % corpus.size()], 1, 4, strategies));
}
BENCHMARK(BM_Crosscheck);

static void BM_Canonicalize(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> order(2, std::uint64_t{1} << 62);
  std::vector<BigInt> orders;
  for (int i = 0; i < state.range(0); ++i) orders.emplace_back(order(rng));
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(0, orders));
}
BENCHMARK(BM_Canonicalize)->Arg(1)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
