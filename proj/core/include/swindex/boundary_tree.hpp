#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swindex/suffix_tree.hpp"

namespace swindex {

/// Suffix tree over the text around a segment boundary, plus the modified
/// suffix array: entries for suffixes starting right of the boundary are
/// replaced by -1 so a range maximum finds the rightmost left-side start.
class BoundaryTree {
 public:
  static constexpr std::int32_t kRightSide = -1;

  BoundaryTree(SuffixTree tree, Position boundary_last);

  const SuffixTree& tree() const noexcept { return tree_; }
  Position boundary_last() const noexcept { return boundary_last_; }
  Matcher matcher() const { return tree_.matcher(); }

  /// Modified entry j as an absolute position, or -1.
  Position modified_position(std::size_t j) const noexcept {
    return modified_[j] == kRightSide ? -1 : tree_.abs_start() + modified_[j];
  }
  std::vector<Position> modified_suffix_array() const;

  /// Starts p in the range with p <= boundary_last and p >= max(boundary_last
  /// - m + 2, window_left): occurrences of a length-m pattern that cross the
  /// boundary and begin inside the window.
  void report_crossing(LeafRange r, std::size_t m, Position window_left,
                       std::vector<Position>& out, ReportCounter* counter = nullptr) const;

  std::size_t memory_bytes() const noexcept;

 private:
  SuffixTree tree_;
  Position boundary_last_;
  std::vector<std::int32_t> modified_;
  RangeMax<std::int32_t> rmq_;
};

/// Builds the boundary tree over text, which spans boundary_last. The left
/// part is the tail of the left segment, the right part the right segment.
BoundaryTree build_boundary_tree(TextSlice text, Position boundary_last, TreeBuilder& builder);

/// Same, from the two sides separately; they must be contiguous.
BoundaryTree build_boundary_tree(TextSlice left_tail, TextSlice right, TreeBuilder& builder);

}  // namespace swindex
