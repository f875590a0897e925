#pragma once

#include <optional>
#include <vector>

#include "swindex/engine.hpp"
#include "swindex/query_session.hpp"
#include "swindex/window_index.hpp"

namespace swindex {

struct BufferedQuery {
  std::uint64_t qid = 0;
  std::vector<Symbol> pattern;
  Position rb = -1;
  std::uint64_t asked_tick = 0;
};

struct DelayedCounters {
  std::uint64_t flushes = 0;
  std::uint64_t buffered_queries = 0;
  std::uint64_t long_queries = 0;
  std::uint64_t committed_mid_pattern = 0;
  std::uint64_t overlapping_flushes = 0;  // a flush began before the previous one was paid off
  std::uint64_t peak_buffer = 0;
};

/// Engine that may answer up to delta characters late. Updates and short
/// patterns are buffered and handled in batches (flushes) whose cost is
/// spread over the following delta'/4 characters; long patterns are answered
/// at once against the last flushed structure plus the uncovered suffix t.
class DelayedEngine final : public Engine {
 public:
  explicit DelayedEngine(const EngineConfig& config);

  void update(Symbol c) override;
  std::uint64_t begin_query() override;
  void query_symbol(Symbol c) override;
  void end_query() override;
  void finish() override;
  StatList stats() const override;
  const char* name() const override { return "delayed"; }

  std::uint64_t delay() const noexcept { return delay_; }
  std::uint64_t buffered_chars() const noexcept { return count_; }
  const WindowIndex& index() const noexcept { return index_; }
  const QueryCounters& query_counters() const noexcept { return counters_; }
  const DelayedCounters& delayed_counters() const noexcept { return delayed_; }

  /// Answers one buffered query against view. Exposed for tests.
  static std::vector<Position> answer_buffered(const ActiveView& view, const SymbolStore& store,
                                               const SuffixTree* t_tree, const BufferedQuery& q,
                                               std::uint64_t w, QueryCounters& counters,
                                               std::uint64_t* units = nullptr);

 private:
  void start_flush(bool final = false);
  void tick_begin();

  EngineConfig config_;
  std::uint64_t delay_;  // delta'
  WindowIndex index_;
  SpreadSchedule flush_schedule_;
  std::vector<BufferedQuery> buffer_;
  std::uint64_t count_ = 0;  // buffered characters

  std::optional<QuerySession> session_;
  std::uint64_t qid_ = 0;
  bool committed_ = false;  // current pattern already routed to the long path

  QueryCounters counters_;
  DelayedCounters delayed_;
  std::vector<Symbol> scratch_;
};

}  // namespace swindex
