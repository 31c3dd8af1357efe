#include <benchmark/benchmark.h>

#include "acgame/analysis.hpp"
#include "acgame/oracle.hpp"
#include "acgame/strategies.hpp"

using namespace acgame;

namespace {

Execution mode_of(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_StabilitySearch(benchmark::State& state) {
  StabilityQuery q;
  q.initial = GameState::empty(4);
  q.baseline = matching_profile(4, {{PlayerId{0}, PlayerId{1}}, {PlayerId{2}, PlayerId{3}}});
  q.catalog = builtin_catalog();
  q.k = 1;  // stable at k = 1, so every candidate is evaluated
  for (auto _ : state) benchmark::DoNotOptimize(find_unstable_set(q, mode_of(state)));
}

void BM_OracleSweep(benchmark::State& state) {
  const auto profiles = oracle::random_profiles(10000, 30, 50, 42);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::sweep(profiles, mode_of(state)));
}

void BM_RunGames(benchmark::State& state) {
  std::vector<GameSetup> setups;
  for (int i = 0; i < 32; ++i)
    setups.push_back({GameState::empty(2),
                      StrategyProfile({pair_two_joint_even_split(PlayerId{1}), pair_two_joint_even_split(PlayerId{0})}),
                      2000 + 100 * i});
  for (auto _ : state) benchmark::DoNotOptimize(run_games(setups, mode_of(state)));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_StabilitySearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunGames)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
