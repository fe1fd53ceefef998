#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "hs/highlight.hpp"
#include "hs/similarity.hpp"
#include "hs/unicode.hpp"

namespace {

std::string random_text(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz     ";
  std::string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s += kAlphabet[rng() % (sizeof(kAlphabet) - 1)];
  return s;
}

void BM_LcsLength(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = hs::unicode::decode(random_text(n, 1));
  const auto b = hs::unicode::decode(random_text(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(hs::lcs_length(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsLength)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_BestSpan(benchmark::State& state) {
  const auto doc = hs::Document::make("d", random_text(static_cast<std::size_t>(state.range(0)), 3));
  const auto query = doc.slice(doc.length() / 3, doc.length() / 3 + 120);
  hs::HighlightLimits lim;
  for (auto _ : state) benchmark::DoNotOptimize(hs::best_span(doc, query, lim));
}
BENCHMARK(BM_BestSpan)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_SnapExtracts(benchmark::State& state) {
  std::vector<hs::Document> docs;
  for (int i = 0; i < 5; ++i) docs.push_back(hs::Document::make("d" + std::to_string(i), random_text(3000, 10 + i)));
  std::vector<std::string> extracts;
  for (int i = 0; i < state.range(0); ++i) {
    const auto& d = docs[static_cast<std::size_t>(i) % docs.size()];
    extracts.push_back(d.slice(200 + 150 * i, 300 + 150 * i));
  }
  hs::HighlightLimits lim;
  for (auto _ : state) benchmark::DoNotOptimize(hs::snap_extracts(docs, extracts, lim));
}
BENCHMARK(BM_SnapExtracts)->Arg(1)->Arg(4)->Arg(10);

}  // namespace
