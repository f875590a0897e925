#include <benchmark/benchmark.h>

#include <random>

#include "swindex/alphabet_reduction.hpp"
#include "swindex/suffix_tree.hpp"

namespace {

std::vector<swindex::Symbol> random_text(std::size_t n, std::uint64_t alphabet) {
  std::mt19937_64 rng(n);
  std::vector<swindex::Symbol> t(n);
  for (auto& c : t) c = rng() % alphabet;
  return t;
}

void BM_ReduceRankSpace(benchmark::State& state) {
  const auto text = random_text(static_cast<std::size_t>(state.range(0)), std::uint64_t{1} << 40);
  const std::uint64_t w = 1 << 18;
  std::mt19937_64 rng(3);
  swindex::ScratchPoolSet pools(swindex::small_path_range(w));
  for (auto _ : state) benchmark::DoNotOptimize(swindex::reduce_rank_space(text, w, rng, pools));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReduceRankSpace)->RangeMultiplier(8)->Range(4, 1 << 18);

void BM_BuildSuffixTree(benchmark::State& state) {
  const auto text = random_text(static_cast<std::size_t>(state.range(0)), 4);
  swindex::TreeBuilder builder(1 << 18, 5);
  for (auto _ : state) benchmark::DoNotOptimize(builder.build(swindex::TextSlice{text, 0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSuffixTree)->RangeMultiplier(8)->Range(8, 1 << 18);

}  // namespace
