#include <benchmark/benchmark.h>

#include "possifolio/exact_solver.hpp"
#include "possifolio/harmony_search.hpp"
#include "possifolio/mc_validator.hpp"
#include "possifolio/table_report.hpp"

using namespace possifolio;

namespace {

ReducedLP synthetic_lp(std::size_t n) {
  Rng rng(n);
  ReducedLP lp;
  lp.rhs = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    lp.c.push_back(uniform_range(rng, 0.5, 3.0));
    lp.bounds.push_back(uniform_range(rng, 10.0, 100.0));
    total += lp.bounds.back();
  }
  lp.budget = 0.6 * total;
  return lp;
}

}  // namespace

static void BM_NormalQuantile(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_quantile(p));
    p += 0.0001;
    if (p >= 1.0) p = 0.0001;
  }
}
BENCHMARK(BM_NormalQuantile);

static void BM_Reduce(benchmark::State& state) {
  const PortfolioInstance inst = reference_example_instance();
  const ChanceLevels levels(0.1, 0.1);
  for (auto _ : state)
    benchmark::DoNotOptimize(reduce(inst, levels, QuantileMode::rounded_2dp));
}
BENCHMARK(BM_Reduce);

static void BM_SolveExact(benchmark::State& state) {
  const ReducedLP lp = synthetic_lp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(lp));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveExact)->RangeMultiplier(4)->Range(5, 1280)->Complexity();

static void BM_HarmonySearch(benchmark::State& state) {
  const ReducedLP lp = synthetic_lp(static_cast<std::size_t>(state.range(0)));
  HSParams params;
  params.max_improvisations = 1000;
  params.seed = 99;
  for (auto _ : state) benchmark::DoNotOptimize(solve_hs(lp, params));
  state.SetItemsProcessed(state.iterations() * params.max_improvisations);
}
BENCHMARK(BM_HarmonySearch)->Arg(5)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_AggregateReturn(benchmark::State& state) {
  const PortfolioInstance inst = reference_example_instance();
  const Allocation x{20, 60, 60, 0, 60};
  double t = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(aggregate_return(inst, x, t));
    t = t < 2.0 ? t + 1e-4 : -2.0;
  }
}
BENCHMARK(BM_AggregateReturn);

static void BM_EstimateObjectiveChance(benchmark::State& state) {
  const PortfolioInstance inst = reference_example_instance();
  const Allocation x{20, 60, 60, 0, 60};
  const std::int64_t samples = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_objective_chance(inst, x, 451.0, 0.1, samples, 42));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_EstimateObjectiveChance)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
