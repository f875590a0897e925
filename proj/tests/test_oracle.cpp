#include <gtest/gtest.h>

#include <random>
#include <string>

#include "swindex/naive_window.hpp"

using namespace swindex;

namespace {

std::vector<Symbol> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(NaiveWindow, Mississippi) {
  NaiveWindow nw(8, 8);
  for (unsigned char c : std::string("mississippi")) nw.push(c);
  EXPECT_EQ(nw.answer(bytes("si"), 10), (std::vector<Position>{3, 6}));
  EXPECT_TRUE(nw.answer(bytes("mississip"), 10).empty());
}

TEST(NaiveWindow, SingleSymbolAlphabet) {
  NaiveWindow nw(4, 4);
  for (int i = 0; i < 9; ++i) nw.push(0);
  EXPECT_EQ(nw.answer(std::vector<Symbol>{0}, 8), (std::vector<Position>{5, 6, 7, 8}));
}

TEST(NaiveWindow, StaleWindowIsOutOfRange) {
  NaiveWindow nw(4, 6);
  for (int i = 0; i < 20; ++i) nw.push(i);
  EXPECT_NO_THROW(nw.answer(std::vector<Symbol>{17}, 17));
  EXPECT_THROW(nw.answer(std::vector<Symbol>{1}, 16), std::out_of_range);
  EXPECT_THROW(nw.answer(std::vector<Symbol>{1}, 20), std::out_of_range);
}

TEST(NaiveWindow, ChunkingDoesNotMatter) {
  std::mt19937_64 rng(8);
  std::vector<Symbol> stream(500);
  for (auto& c : stream) c = rng() % 3;
  NaiveWindow a(32, 40), b(32, 97);
  for (Symbol c : stream) a.push(c);
  std::size_t i = 0;
  while (i < stream.size()) {
    const std::size_t chunk = 1 + rng() % 17;
    for (std::size_t k = 0; k < chunk && i < stream.size(); ++k) b.push(stream[i++]);
  }
  for (int q = 0; q < 100; ++q) {
    std::vector<Symbol> p(1 + rng() % 4);
    for (auto& c : p) c = rng() % 3;
    EXPECT_EQ(a.answer(p, 499), b.answer(p, 499));
  }
}

TEST(OracleEngine, ImmediateAnswers) {
  EngineConfig c;
  c.w = 8;
  c.kind = EngineKind::kOracle;
  auto e = make_engine(c);
  EXPECT_STREQ(e->name(), "oracle");
  for (unsigned char ch : std::string("mississippi")) e->update(ch);
  e->begin_query();
  e->query_symbol('s');
  e->query_symbol('i');
  e->end_query();
  const auto r = e->take_results();
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].positions, (std::vector<Position>{3, 6}));
}
