#include <benchmark/benchmark.h>

#include <random>

#include "swindex/engine.hpp"

namespace {

using swindex::EngineConfig;
using swindex::Symbol;

void fill(swindex::Engine& e, std::uint64_t n, std::mt19937_64& rng) {
  for (std::uint64_t i = 0; i < n; ++i) e.update(rng() % 4);
}

void BM_TimelyUpdate(benchmark::State& state) {
  EngineConfig cfg;
  cfg.w = static_cast<std::uint64_t>(state.range(0));
  auto e = swindex::make_engine(cfg);
  std::mt19937_64 rng(1);
  fill(*e, 2 * cfg.w, rng);
  for (auto _ : state) e->update(rng() % 4);
  state.SetItemsProcessed(state.iterations());
  state.counters["max_units"] = static_cast<double>(e->ledger().max_per_tick());
}
BENCHMARK(BM_TimelyUpdate)->RangeMultiplier(16)->Range(1 << 10, 1 << 18);

// Flushes are bursty; the minimum time keeps several flush cycles in each sample.
void BM_DelayedUpdate(benchmark::State& state) {
  EngineConfig cfg;
  cfg.w = static_cast<std::uint64_t>(state.range(0));
  cfg.delta = cfg.w / static_cast<std::uint64_t>(state.range(1));
  auto e = swindex::make_engine(cfg);
  std::mt19937_64 rng(1);
  fill(*e, 2 * cfg.w, rng);
  for (auto _ : state) e->update(rng() % 4);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DelayedUpdate)->MinTime(1.0)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {64, 4}});

// Whole query: begin, m pattern symbols, end and result collection.
void BM_TimelyQuery(benchmark::State& state) {
  EngineConfig cfg;
  cfg.w = 1 << 16;
  auto e = swindex::make_engine(cfg);
  std::mt19937_64 rng(2);
  std::vector<Symbol> text;
  for (std::uint64_t i = 0; i < 2 * cfg.w; ++i) {
    text.push_back(rng() % 4);
    e->update(text.back());
  }
  const auto m = static_cast<std::size_t>(state.range(0));
  std::size_t reported = 0;
  for (auto _ : state) {
    const std::size_t start = text.size() - m - rng() % (cfg.w - m);
    e->begin_query();
    for (std::size_t i = start; i < start + m; ++i) e->query_symbol(text[i]);
    e->end_query();
    for (const auto& r : e->take_results()) reported += r.positions.size();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
  state.counters["occ_per_query"] = static_cast<double>(reported) / static_cast<double>(state.iterations());
}
BENCHMARK(BM_TimelyQuery)->RangeMultiplier(4)->Range(8, 8192);

}  // namespace

BENCHMARK_MAIN();
