#pragma once

#include <optional>

#include "swindex/engine.hpp"
#include "swindex/query_session.hpp"
#include "swindex/window_index.hpp"

namespace swindex {

/// Zero-delay engine: every update goes straight through the segment
/// pipeline and every pattern is answered at its end.
class TimelyEngine final : public Engine {
 public:
  explicit TimelyEngine(const EngineConfig& config);

  void update(Symbol c) override;
  std::uint64_t begin_query() override;
  void query_symbol(Symbol c) override;
  void end_query() override;
  void finish() override;
  StatList stats() const override;
  const char* name() const override { return "timely"; }

  const WindowIndex& index() const noexcept { return index_; }
  const QueryCounters& query_counters() const noexcept { return counters_; }

 private:
  EngineConfig config_;
  WindowIndex index_;
  std::optional<QuerySession> session_;
  std::uint64_t qid_ = 0;
  QueryCounters counters_;
};

StatList window_stats(const WindowIndex& index, const QueryCounters& counters, const WorkLedger& ledger,
                      std::uint64_t ledger_violations, double ledger_limit);

}  // namespace swindex
