#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swindex/window_index.hpp"

namespace swindex {

struct QueryCounters {
  std::uint64_t queries = 0;
  std::uint64_t duplicates = 0;      // positions emitted by two reporting cases
  std::uint64_t grown_overflow = 0;  // grown tree had to exceed rho * m
  std::uint64_t probes = 0;
};

/// Start positions p >= window_left of pattern occurrences that lie inside a
/// single segment of the view (case a) or cross a boundary whose right
/// segment is at least |pattern| long (case b). Runs fresh matchers.
/// Returns the number of matcher steps taken.
std::uint64_t report_segments(const ActiveView& view, std::span<const Symbol> pattern,
                              Position window_left, std::vector<Position>& out,
                              ReportCounter* counter = nullptr);

/// Sorts out, removes repeated positions and returns how many were removed.
std::uint64_t sort_unique(std::vector<Position>& out);

struct GrownSchedule {
  int rho = 8;
  std::uint64_t min_span = 0;  // levels with 2^(l+1) <= min_span are never needed
};

/// One streamed pattern against a frozen snapshot of the index. Matchers on
/// every segment and boundary tree advance with each pattern symbol; the
/// grown tree over the recent suffix is built once the pattern is complete.
class QuerySession {
 public:
  QuerySession(ActiveView view, const SymbolStore& store, std::uint64_t w, GrownSchedule grown,
               TreeBuilder& builder);

  /// Advances every live matcher. Returns the units charged for this symbol.
  std::uint64_t feed(Symbol c);

  /// Sorted occurrence starts in the window ending at rb().
  std::vector<Position> finish(QueryCounters& counters);

  std::size_t length() const noexcept { return pattern_.size(); }
  Position rb() const noexcept { return view_.end - 1; }
  Position window_left() const noexcept;
  const std::vector<Symbol>& pattern() const noexcept { return pattern_; }
  std::size_t matcher_count() const noexcept { return segment_matchers_.size() + boundary_matchers_.size(); }
  const ActiveView& view() const noexcept { return view_; }

 private:
  std::uint64_t grown_charge(std::uint64_t j) const;

  ActiveView view_;
  const SymbolStore* store_;
  std::uint64_t w_;
  GrownSchedule grown_;
  TreeBuilder* builder_;
  std::vector<Matcher> segment_matchers_;
  std::vector<std::optional<Matcher>> boundary_matchers_;  // index i: left boundary of segment i
  std::vector<Symbol> pattern_;
  std::vector<Symbol> scratch_;
};

}  // namespace swindex
