#include "swindex/timely_engine.hpp"

#include <cmath>

namespace swindex {

namespace {

WindowConfig timely_window(const EngineConfig& config) {
  WindowConfig wc;
  wc.w = config.w;
  wc.granularity = 1;
  wc.grace = 0;
  wc.seed = config.seed;
  wc.rank.large_attempts = static_cast<int>(config.boost);
  return wc;
}

}  // namespace

TimelyEngine::TimelyEngine(const EngineConfig& config)
    : Engine(ledger_bound(config.ledger_c, config.w, 0)), config_(config), index_(timely_window(config)) {}

void TimelyEngine::update(Symbol c) {
  if (session_) throw ProtocolError("update inside query");
  ledger_.charge(1 + index_.push_symbol(c));
  close_tick();
}

std::uint64_t TimelyEngine::begin_query() {
  if (session_) throw ProtocolError("nested query");
  session_.emplace(index_.active_view(), index_.store(), config_.w, GrownSchedule{8, 0}, index_.builder());
  return ++qid_;
}

void TimelyEngine::query_symbol(Symbol c) {
  if (!session_) throw ProtocolError("QC outside query");
  ledger_.charge(session_->feed(c));
  close_tick();
}

void TimelyEngine::end_query() {
  if (!session_) throw ProtocolError("QEND outside query");
  if (session_->length() == 0) throw ProtocolError("empty pattern");
  const Position rb = session_->rb();
  emit({qid_, rb, session_->finish(counters_), chars(), chars()});
  session_.reset();
}

void TimelyEngine::finish() {
  if (session_) throw ProtocolError("unterminated query");
}

StatList window_stats(const WindowIndex& index, const QueryCounters& counters, const WorkLedger& ledger,
                      std::uint64_t ledger_violations, double ledger_limit) {
  const auto& ws = index.stats();
  const auto& bs = index.builder().stats();
  return {{"max_units_per_char", ledger.max_per_tick()},
          {"ledger_limit", static_cast<std::uint64_t>(std::floor(ledger_limit))},
          {"ledger_violations", ledger_violations},
          {"stored_symbols", index.store().size()},
          {"peak_stored_symbols", index.store().peak()},
          {"live_nodes", static_cast<std::uint64_t>(index.builder().nodes().live)},
          {"peak_live_nodes", static_cast<std::uint64_t>(index.builder().nodes().peak)},
          {"hash_attempts", bs.hash_attempts},
          {"hash_fallbacks", bs.fallbacks},
          {"trees_built", bs.trees},
          {"segments", index.segments().size()},
          {"pending_merges", index.pending().size()},
          {"cap_level", static_cast<std::uint64_t>(index.cap_level())},
          {"lemma_checks", ws.lemma_checks},
          {"lemma_violations", ws.lemma_violations + ws.triple_violations + ws.pending_violations},
          {"cancelled_merges", ws.cancelled_merges},
          {"arrivals", index.arrivals()},
          {"queries", counters.queries},
          {"duplicate_reports", counters.duplicates},
          {"grown_overflow", counters.grown_overflow}};
}

StatList TimelyEngine::stats() const {
  StatList s = window_stats(index_, counters_, ledger_, ledger_violations_, limit_);
  s.insert(s.begin() + 8, {"flushes", 0});
  return s;
}

}  // namespace swindex
