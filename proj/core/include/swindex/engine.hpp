#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "swindex/types.hpp"
#include "swindex/work_ledger.hpp"

namespace swindex {

enum class EngineKind { kAuto, kTimely, kDelayed, kOracle };

EngineKind parse_engine_kind(const std::string& name);
const char* engine_kind_name(EngineKind kind);

struct EngineConfig {
  std::uint64_t w = 1;
  std::uint64_t delta = 0;
  std::uint64_t seed = 1;
  EngineKind kind = EngineKind::kAuto;
  std::uint64_t boost = 1;   // independent large-path hash attempts before fallback
  double ledger_c = 100.0;   // per-character unit budget constant
};

/// Power of two used as the working delay: 2^floor(log2 min(delta, w)), 0 for delta 0.
std::uint64_t effective_delay(std::uint64_t w, std::uint64_t delta);

/// Engine actually built for a config (resolves kAuto).
EngineKind resolve_kind(const EngineConfig& config);

struct QueryResult {
  std::uint64_t qid = 0;
  Position rb = -1;  // last stream position of the queried window
  std::vector<Position> positions;
  std::uint64_t asked_tick = 0;     // characters seen when the query ended
  std::uint64_t answered_tick = 0;  // characters seen when it was answered
};

using StatList = std::vector<std::pair<std::string, std::uint64_t>>;

/// Common streaming interface. Every character, from the text stream or from
/// a pattern, is one tick of the work ledger.
class Engine {
 public:
  virtual ~Engine() = default;

  virtual void update(Symbol c) = 0;
  /// Opens a pattern and returns its id (sequential from 1).
  virtual std::uint64_t begin_query() = 0;
  virtual void query_symbol(Symbol c) = 0;
  virtual void end_query() = 0;
  /// Answers everything still outstanding.
  virtual void finish() = 0;
  virtual StatList stats() const = 0;
  virtual const char* name() const = 0;

  /// Results produced since the previous call, in emission order.
  std::vector<QueryResult> take_results() { return std::exchange(results_, {}); }

  const WorkLedger& ledger() const noexcept { return ledger_; }
  std::uint64_t ledger_violations() const noexcept { return ledger_violations_; }
  double ledger_limit() const noexcept { return limit_; }
  std::uint64_t chars() const noexcept { return ledger_.ticks(); }

 protected:
  explicit Engine(double limit) : limit_(limit) {}

  void close_tick() {
    if (static_cast<double>(ledger_.close_tick()) > limit_) ++ledger_violations_;
  }
  void emit(QueryResult r) { results_.push_back(std::move(r)); }

  WorkLedger ledger_;
  std::uint64_t ledger_violations_ = 0;
  double limit_;
  std::vector<QueryResult> results_;
};

std::unique_ptr<Engine> make_engine(const EngineConfig& config);

}  // namespace swindex
