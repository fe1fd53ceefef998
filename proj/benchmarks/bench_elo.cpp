#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "hs/elo.hpp"

namespace {

void BM_Elo(benchmark::State& state) {
  const std::vector<std::string> names = {"vanilla", "hs-baseline", "hs-structured", "hs-extractive"};
  std::mt19937_64 rng(5);
  std::vector<hs::BattleOutcome> battles;
  for (int i = 0; i < state.range(0); ++i) {
    const auto a = rng() % names.size();
    const auto b = (a + 1 + rng() % (names.size() - 1)) % names.size();
    battles.push_back({"q" + std::to_string(i), names[a], names[b], static_cast<hs::BattleResult>(rng() % 4), false});
  }
  hs::EloParams params;
  for (auto _ : state) benchmark::DoNotOptimize(hs::elo(battles, params, names));
  state.SetItemsProcessed(state.iterations() * state.range(0) * params.permutations);
}
BENCHMARK(BM_Elo)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
