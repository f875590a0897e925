#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "swindex/boundary_tree.hpp"
#include "swindex/suffix_tree.hpp"
#include "swindex/symbol_store.hpp"
#include "swindex/work_ledger.hpp"

namespace swindex {

struct WindowConfig {
  std::uint64_t w = 1;
  std::uint64_t granularity = 1;  // size of a level-0 segment
  std::uint64_t grace = 0;        // extra retention left of the window
  std::uint64_t seed = 1;
  RankOptions rank{};
};

/// A piece of the stored suffix with its suffix tree. `left_boundary` covers
/// the boundary to the left neighbour; the leftmost segment has none.
struct Segment {
  int level = 0;
  Position start = 0;
  Position end = 0;  // inclusive
  std::shared_ptr<const SuffixTree> tree;
  std::shared_ptr<const BoundaryTree> left_boundary;
  bool paired = false;  // member of a pending merge

  std::uint64_t size() const noexcept { return static_cast<std::uint64_t>(end - start + 1); }
};

/// Deferred construction: either a fresh level-0 segment over the next block
/// (granularity > 1) or the merge of two equal adjacent segments. Becomes
/// visible at activate_at; its cost is spread over the arrivals before that.
struct PendingTask {
  enum class Kind { kCreate, kMerge };
  Kind kind = Kind::kMerge;
  int level = 0;         // level of the block or of each merge member
  Position start = 0;    // first position covered
  Position end = 0;      // last position covered
  std::uint64_t created_at = 0;
  std::uint64_t activate_at = 0;
  std::uint64_t planned_units = 0;
};

/// Immutable snapshot of the query-visible structure.
struct ActiveView {
  std::vector<Segment> segments;  // left to right, tiling [s_begin, t_begin)
  Position s_begin = 0;
  Position t_begin = 0;  // uncovered suffix t = [t_begin, end)
  Position end = 0;
};

struct WindowStats {
  std::uint64_t lemma_checks = 0;
  std::uint64_t lemma_violations = 0;       // wrong set of sizes right of a new segment
  std::uint64_t triple_violations = 0;      // three equal adjacent segments
  std::uint64_t pending_violations = 0;     // two pendings of one size class
  std::uint64_t tiling_violations = 0;
  std::uint64_t cancelled_merges = 0;
  std::uint64_t discarded_segments = 0;
};

/// Log-structured hierarchy of suffix trees over the recent stream. The
/// symbol store receives every arrival immediately; the segment pipeline
/// consumes them one at a time through advance(), which may lag behind.
class WindowIndex {
 public:
  explicit WindowIndex(const WindowConfig& config);

  /// Store the symbol without touching the segment pipeline.
  void append(Symbol c);
  /// Feed the oldest unapplied stored symbol to the pipeline: create level-0
  /// work, activate due tasks, pair equal neighbours, discard expired
  /// segments. Returns the work units charged to this step.
  std::uint64_t advance();
  /// append + advance.
  std::uint64_t push_symbol(Symbol c);

  void activate_due();
  void discard_expired();
  ActiveView active_view() const;

  const WindowConfig& config() const noexcept { return config_; }
  int cap_level() const noexcept { return cap_level_; }
  std::uint64_t applied() const noexcept { return applied_; }
  std::uint64_t arrivals() const noexcept { return static_cast<std::uint64_t>(store_.end()); }
  const SymbolStore& store() const noexcept { return store_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<PendingTask>& pending() const noexcept { return pending_; }
  const WindowStats& stats() const noexcept { return stats_; }
  const SpreadSchedule& schedule() const noexcept { return schedule_; }
  TreeBuilder& builder() noexcept { return builder_; }
  const TreeBuilder& builder() const noexcept { return builder_; }
  /// Level -> number of visible segments.
  std::map<int, int> level_histogram() const;
  std::size_t live_nodes() const noexcept { return static_cast<std::size_t>(builder_.nodes().live); }

  /// Checks that segments tile the covered span and sizes are non-increasing.
  bool check_tiling() const;

 private:
  std::uint64_t segment_size(int level) const noexcept { return config_.granularity << level; }
  Position covered_end() const noexcept;
  std::uint64_t boundary_left_len(Position right_start, std::uint64_t right_size) const noexcept;
  std::shared_ptr<const BoundaryTree> make_boundary(Position right_start, std::uint64_t right_size);
  std::shared_ptr<const SuffixTree> make_tree(Position start, Position end);
  void insert_segment(Segment seg);
  void apply(const PendingTask& task);
  void pair_neighbours();
  void check_lemma(std::size_t index);

  WindowConfig config_;
  int cap_level_ = 0;
  SymbolStore store_;
  TreeBuilder builder_;
  std::vector<Segment> segments_;
  std::vector<PendingTask> pending_;
  Position next_block_ = 0;  // first position not yet claimed by a segment or task
  std::uint64_t applied_ = 0;
  SpreadSchedule schedule_;
  WindowStats stats_;
  std::vector<Symbol> scratch_;
};

}  // namespace swindex
