#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "swindex/window_index.hpp"
#include "swindex/work_ledger.hpp"

using namespace swindex;

namespace {

WindowIndex make_index(std::uint64_t w, std::uint64_t g = 1, std::uint64_t grace = 0) {
  WindowConfig c;
  c.w = w;
  c.granularity = g;
  c.grace = grace;
  c.seed = 5;
  return WindowIndex(c);
}

std::vector<int> levels(const WindowIndex& idx) {
  std::vector<int> out;
  for (const Segment& s : idx.segments()) out.push_back(s.level);
  return out;
}

std::string segment_text(const Segment& s) {
  std::string out;
  for (Symbol c : s.tree->text()) out.push_back(static_cast<char>(c));
  return out;
}

// Scalar model of the deferred binary increment: only sizes and timers.
struct LemmaModel {
  struct Seg {
    int level;
    bool paired;
  };
  struct Task {
    std::size_t left;  // creation order id of the left member
    int level;
    std::uint64_t due;
  };
  std::vector<std::pair<std::size_t, Seg>> segs;  // (id, seg)
  std::vector<Task> tasks;
  std::uint64_t n = 0;
  std::size_t next_id = 0;

  void arrive() {
    ++n;
    segs.push_back({next_id++, {0, false}});
    std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.level < b.level; });
    std::vector<Task> keep;
    for (const Task& t : tasks) {
      if (t.due > n) {
        keep.push_back(t);
        continue;
      }
      auto it = std::find_if(segs.begin(), segs.end(), [&](const auto& s) { return s.first == t.left; });
      it->second = {t.level + 1, false};
      segs.erase(it + 1);
    }
    tasks = keep;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      auto& a = segs[i].second;
      auto& b = segs[i + 1].second;
      if (a.paired || b.paired || a.level != b.level) continue;
      a.paired = b.paired = true;
      tasks.push_back({segs[i].first, a.level, n + (std::uint64_t{1} << a.level)});
      ++i;
    }
  }

  std::vector<int> levels() const {
    std::vector<int> out;
    for (const auto& s : segs) out.push_back(s.second.level);
    return out;
  }
};

}  // namespace

TEST(SpreadSchedule, ChargesSumExactlyAndEvenly) {
  SpreadSchedule s;
  s.add(10, 4);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 4; ++i) got.push_back(s.step());
  EXPECT_EQ(got, (std::vector<std::uint64_t>{2, 3, 2, 3}));
  EXPECT_TRUE(s.idle());
  EXPECT_EQ(s.completed_total(), 10u);
  EXPECT_EQ(s.completed_charged(), 10u);

  std::mt19937_64 rng(2);
  std::uint64_t total = 0, charged = 0;
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t t = rng() % 1000, d = 1 + rng() % 50;
    s.add(t, d);
    total += t;
    charged += s.step();
  }
  while (!s.idle()) charged += s.step();
  EXPECT_EQ(total, charged);
}

TEST(WorkLedger, TracksMaximum) {
  WorkLedger l;
  l.charge(3);
  l.charge(4);
  EXPECT_EQ(l.close_tick(), 7u);
  l.charge(2);
  l.close_tick();
  EXPECT_EQ(l.max_per_tick(), 7u);
  EXPECT_EQ(l.total(), 9u);
  EXPECT_EQ(l.ticks(), 2u);
  EXPECT_DOUBLE_EQ(ledger_bound(10, 1024, 0), 120.0);
}

TEST(WindowIndex, BinaryIncrementStartsAPending) {
  WindowIndex idx = make_index(1024);
  for (int i = 0; i < 7; ++i) idx.push_symbol('a' + i);
  EXPECT_EQ(levels(idx), (std::vector<int>{2, 1, 0}));
  idx.push_symbol('h');
  EXPECT_EQ(levels(idx), (std::vector<int>{2, 1, 0, 0}));
  ASSERT_EQ(idx.pending().size(), 1u);
  EXPECT_EQ(idx.pending()[0].level, 0);
  EXPECT_EQ(idx.pending()[0].activate_at, idx.pending()[0].created_at + 1);
}

TEST(WindowIndex, CascadeReachesSizeFour) {
  WindowIndex idx = make_index(1024);
  const std::string s = "reesxyz";
  bool saw_es = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    idx.push_symbol(static_cast<unsigned char>(s[i]));
    for (const Segment& seg : idx.segments()) saw_es |= segment_text(seg) == "es";
  }
  EXPECT_TRUE(saw_es);
  ASSERT_FALSE(idx.segments().empty());
  EXPECT_EQ(segment_text(idx.segments().front()), "rees");
}

TEST(WindowIndex, DiscardAfterWindowPasses) {
  WindowIndex idx = make_index(8);
  for (int i = 0; i < 15; ++i) idx.push_symbol(i);
  // Window [7, 14]: the segment ending at 7 still intersects it.
  ASSERT_EQ(idx.segments().front().end, 7);
  idx.push_symbol(15);
  EXPECT_EQ(idx.segments().front().start, 8);
  EXPECT_EQ(idx.store().head(), 8);
}

TEST(WindowIndex, GraceRetainsOldSegments) {
  WindowIndex plain = make_index(8, 4, 0);
  WindowIndex graced = make_index(8, 4, 8);
  for (int i = 0; i < 40; ++i) {
    plain.push_symbol(i);
    graced.push_symbol(i);
    const Position wl = i + 1 - 8;
    for (const Segment& s : plain.segments()) EXPECT_GE(s.end, wl);
    for (const Segment& s : graced.segments()) EXPECT_GE(s.end, wl - 8);
  }
  EXPECT_GT(graced.store().size(), plain.store().size());
}

TEST(WindowIndex, PendingPairIsVisibleUntilActivation) {
  WindowIndex idx = make_index(1024);
  for (int i = 0; i < 6; ++i) idx.push_symbol(i);
  // Levels (2-pending pair) 1,1,0,0: the two size-2 segments await their merge.
  ActiveView v = idx.active_view();
  std::vector<int> lv;
  for (const Segment& s : v.segments) lv.push_back(s.level);
  EXPECT_EQ(lv, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_TRUE(v.segments[1].left_boundary != nullptr);
  EXPECT_EQ(v.segments[1].left_boundary->boundary_last(), 1);
  idx.push_symbol(6);
  v = idx.active_view();
  ASSERT_GE(v.segments.size(), 1u);
  EXPECT_EQ(v.segments[0].level, 2);
  EXPECT_EQ(v.segments[0].size(), 4u);
}

TEST(WindowIndex, MatchesScalarLemmaModel) {
  WindowIndex idx = make_index(1 << 20);
  LemmaModel model;
  for (int i = 0; i < 32; ++i) {
    idx.push_symbol(i % 5);
    model.arrive();
    ASSERT_EQ(levels(idx), model.levels()) << "after arrival " << i + 1;
  }
  EXPECT_EQ(idx.stats().lemma_violations, 0u);
  EXPECT_GT(idx.stats().lemma_checks, 0u);
}

TEST(WindowIndex, TilingAndStorageFuzz) {
  std::mt19937_64 rng(3);
  for (auto [w, g, grace] : {std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>{37, 1, 0},
                             {64, 1, 0},
                             {100, 8, 16},
                             {5, 4, 8}}) {
    WindowIndex idx = make_index(w, g, grace);
    const std::uint64_t arrivals = w < 50 ? 30000 : 20000;
    for (std::uint64_t n = 1; n <= arrivals; ++n) {
      idx.push_symbol(rng() % 4);
      ASSERT_TRUE(idx.check_tiling()) << "w=" << w << " n=" << n;
      ASSERT_LE(idx.store().size(), 4 * w + 2 * grace + 2 * g);
      if (n >= w && g == 1) {
        ASSERT_LE(idx.store().head(), static_cast<Position>(n - w));
        const auto covered = idx.segments().back().end - idx.segments().front().start + 1;
        ASSERT_GE(static_cast<std::uint64_t>(covered), w);
      }
    }
    const auto& st = idx.stats();
    EXPECT_EQ(st.lemma_violations + st.triple_violations + st.pending_violations, 0u) << "w=" << w;
  }
}

TEST(WindowIndex, NonPowerOfTwoCap) {
  WindowIndex idx = make_index(5);
  EXPECT_EQ(idx.cap_level(), 3);
  for (int i = 0; i < 200; ++i) idx.push_symbol(i);
  for (const Segment& s : idx.segments()) EXPECT_LE(s.level, 3);
  EXPECT_LE(idx.store().size(), 4u * 5);
}
