#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <cmath>
#include <map>
#include <set>

#include "swindex/alphabet_reduction.hpp"

using namespace swindex;

namespace {

void expect_equality_pattern(std::span<const Symbol> slice, const RankResult& r) {
  ASSERT_EQ(r.reduced.size(), slice.size());
  std::set<Symbol> distinct(slice.begin(), slice.end());
  EXPECT_EQ(r.reduction.sigma_size(), distinct.size());
  for (std::size_t i = 0; i < slice.size(); ++i) {
    ASSERT_GE(r.reduced[i], 1u);
    ASSERT_LE(r.reduced[i], r.reduction.sigma_size());
    EXPECT_EQ(r.reduction.symbol_of(r.reduced[i]), slice[i]);
    for (std::size_t j = i + 1; j < slice.size(); ++j)
      ASSERT_EQ(slice[i] == slice[j], r.reduced[i] == r.reduced[j]) << i << "," << j;
  }
}

std::vector<Symbol> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(UniversalHash, RangeOneIsConstant) {
  std::mt19937_64 rng(3);
  const auto h = sample_universal(8, 1, rng);
  for (Symbol x = 0; x < 256; ++x) EXPECT_EQ(h(x), 0u);
}

TEST(UniversalHash, SameSeedSameFunction) {
  std::mt19937_64 a(42), b(42);
  const auto h1 = sample_universal(64, 1000, a);
  const auto h2 = sample_universal(64, 1000, b);
  EXPECT_EQ(h1, h2);
  for (Symbol x : {0ull, 1ull, 12345ull, ~0ull}) EXPECT_EQ(h1(x), h2(x));
}

TEST(UniversalHash, RangeRoundedToPowerOfTwo) {
  std::mt19937_64 rng(1);
  const auto h = sample_universal(64, 1000, rng);
  EXPECT_EQ(h.range(), 1024u);
  for (Symbol x = 0; x < 5000; ++x) EXPECT_LT(h(x * 7919), 1024u);
}

TEST(UniversalHash, RejectsBadParameters) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(sample_universal(64, 0, rng), std::invalid_argument);
  EXPECT_THROW(sample_universal(65, 16, rng), std::invalid_argument);
}

TEST(UniversalHash, PairCollisionRateWithinBound) {
  std::mt19937_64 rng(2024);
  const int trials = 10000;
  const double p = 1.0 / 256;
  for (auto [x, y] : {std::pair<Symbol, Symbol>{1, 2}, {0, ~0ull}, {1ull << 40, (1ull << 40) + 256}}) {
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      const auto h = sample_universal(64, 256, rng);
      hits += h(x) == h(y);
    }
    const double sigma = std::sqrt(trials * p * (1 - p));
    EXPECT_LE(hits, trials * p + 3 * sigma) << x << " vs " << y;
  }
}

TEST(CheckInjective, SmallExamples) {
  const std::vector<Symbol> s{1, 2, 3};
  EXPECT_TRUE(check_injective([](Symbol x) { return x; }, s));
  EXPECT_FALSE(check_injective([](Symbol x) { return x % 2; }, s));
  const std::vector<Symbol> repeated{5, 5, 5};
  EXPECT_TRUE(check_injective([](Symbol) { return 0; }, repeated));
}

TEST(CheckInjective, LargePathMonteCarlo) {
  std::mt19937_64 rng(7);
  const std::uint64_t w = 1 << 16;
  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    std::set<Symbol> distinct;
    while (distinct.size() < 1000) distinct.insert(rng());
    const std::vector<Symbol> slice(distinct.begin(), distinct.end());
    const auto h = sample_universal_bits(64, 4 * 16, rng);  // range w^4
    ok += check_injective(h, slice, h.out_bits());
  }
  EXPECT_GE(ok, 198);
}

TEST(RadixSort, SortsByHashStably) {
  std::mt19937_64 rng(5);
  std::vector<detail::HashedSymbol> items;
  for (int i = 0; i < 2000; ++i) items.push_back({rng() % 5000, static_cast<Symbol>(i)});
  auto expected = items;
  std::stable_sort(expected.begin(), expected.end(),
                   [](const auto& a, const auto& b) { return a.hash < b.hash; });
  detail::radix_sort_by_hash(items, 13);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(items[i].hash, expected[i].hash);
    EXPECT_EQ(items[i].symbol, expected[i].symbol);
  }
}

TEST(ScratchPool, NeverAcceptsStaleSlots) {
  std::mt19937_64 rng(11);
  ScratchPool pool(512);
  for (int round = 0; round < 50; ++round) {
    pool.scramble(rng);
    std::map<std::size_t, Symbol> truth;
    const int writes = static_cast<int>(rng() % 300);
    for (int i = 0; i < writes; ++i) {
      const std::size_t slot = rng() % pool.capacity();
      const Symbol v = rng();
      pool.set(slot, v);
      truth[slot] = v;
    }
    EXPECT_EQ(pool.written(), truth.size());
    for (std::size_t s = 0; s < pool.capacity(); ++s) {
      auto it = truth.find(s);
      ASSERT_EQ(pool.is_set(s), it != truth.end()) << "slot " << s;
      if (it != truth.end()) EXPECT_EQ(pool.get(s), it->second);
    }
    pool.clear();
    for (std::size_t s = 0; s < pool.capacity(); ++s) ASSERT_FALSE(pool.is_set(s));
  }
}

TEST(ScratchPoolSet, LeasesAreRecycled) {
  ScratchPoolSet set(64);
  {
    auto a = set.acquire();
    auto b = set.acquire();
    EXPECT_EQ(set.live(), 2u);
  }
  EXPECT_EQ(set.live(), 0u);
  auto c = set.acquire();
  EXPECT_EQ(set.allocated(), 2u);
  EXPECT_EQ(set.max_live(), 2u);
  EXPECT_EQ(c->written(), 0u);
}

TEST(RankReduction, Banana) {
  std::mt19937_64 rng(1);
  ScratchPoolSet pools(small_path_range(1 << 20));
  const auto s = bytes("banana");
  const auto r = reduce_rank_space(s, 1 << 20, rng, pools);
  EXPECT_EQ(r.reduction.sigma_size(), 3u);
  expect_equality_pattern(s, r);
}

TEST(RankReduction, SingleSymbol) {
  std::mt19937_64 rng(1);
  ScratchPoolSet pools(small_path_range(1 << 10));
  const std::vector<Symbol> s{7, 7, 7};
  const auto r = reduce_rank_space(s, 1 << 10, rng, pools);
  EXPECT_EQ(r.reduced, (std::vector<Rank>{1, 1, 1}));
  EXPECT_EQ(r.reduction.sigma_size(), 1u);
}

TEST(RankReduction, WideSymbols) {
  std::mt19937_64 rng(1);
  ScratchPoolSet pools(small_path_range(1 << 10));
  const std::vector<Symbol> s{(1ull << 31) + 5, 17, (1ull << 31) + 5};
  const auto r = reduce_rank_space(s, 1 << 10, rng, pools);
  EXPECT_EQ(r.reduced[0], r.reduced[2]);
  EXPECT_NE(r.reduced[0], r.reduced[1]);
  expect_equality_pattern(s, r);
}

TEST(RankReduction, ForwardMapIsBijection) {
  std::mt19937_64 rng(9);
  ScratchPoolSet pools(small_path_range(1 << 12));
  std::vector<Symbol> s;
  for (int i = 0; i < 300; ++i) s.push_back(rng() % 40);
  const auto r = reduce_rank_space(s, 1 << 12, rng, pools);
  const auto fwd = r.reduction.forward_map();
  EXPECT_EQ(fwd.size(), r.reduction.sigma_size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(fwd.at(s[i]), r.reduced[i]);
}

TEST(RankReduction, PathSelection) {
  std::mt19937_64 rng(4);
  const std::uint64_t w = 1 << 20;  // w^(1/5) ~ 16
  ScratchPoolSet pools(small_path_range(w));
  std::vector<Symbol> small{1, 2, 3, 4, 5};
  std::vector<Symbol> large;
  for (int i = 0; i < 100; ++i) large.push_back(rng());
  EXPECT_EQ(reduce_rank_space(small, w, rng, pools).path, ReductionPath::kSmall);
  EXPECT_EQ(reduce_rank_space(large, w, rng, pools).path, ReductionPath::kLarge);
  EXPECT_EQ(reduce_rank_space(large, 8, rng, pools).path, ReductionPath::kFallback);
}

TEST(RankReduction, ForcedCollisionsFallBack) {
  std::mt19937_64 rng(4);
  const std::uint64_t w = 1 << 20;
  ScratchPoolSet pools(small_path_range(w));
  RankOptions opts;
  opts.forced_hash_range = 1;
  for (std::size_t len : {5u, 100u}) {
    std::vector<Symbol> s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(i % 3 == 0 ? 99 : rng());
    const auto r = reduce_rank_space(s, w, rng, pools, opts);
    EXPECT_EQ(r.path, ReductionPath::kFallback);
    expect_equality_pattern(s, r);
  }
}

TEST(RankReduction, RandomSlicesPreserveEquality) {
  std::mt19937_64 rng(77);
  for (std::uint64_t w : {4ull, 64ull, 1ull << 16}) {
    ScratchPoolSet pools(small_path_range(w));
    for (int t = 0; t < 100; ++t) {
      const std::size_t len = 1 + rng() % 120;
      const std::uint64_t alpha = std::vector<std::uint64_t>{1, 2, 4, 256, 1ull << 31}[rng() % 5];
      std::vector<Symbol> s;
      for (std::size_t i = 0; i < len; ++i) s.push_back(rng() % alpha);
      expect_equality_pattern(s, reduce_rank_space(s, w, rng, pools));
    }
  }
}

TEST(RankReduction, SortingFallbackKeepsOrder) {
  const std::vector<Symbol> s{30, 10, 20, 10};
  const auto r = rank_by_sorting(s);
  EXPECT_EQ(r.reduced, (std::vector<Rank>{3, 1, 2, 1}));
  EXPECT_EQ(r.path, ReductionPath::kFallback);
}
