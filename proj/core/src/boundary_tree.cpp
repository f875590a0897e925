#include "swindex/boundary_tree.hpp"

#include <algorithm>

namespace swindex {

BoundaryTree::BoundaryTree(SuffixTree tree, Position boundary_last)
    : tree_(std::move(tree)), boundary_last_(boundary_last) {
  const auto sa = tree_.relative_suffix_array();
  const Position cut = boundary_last_ - tree_.abs_start();
  modified_.resize(sa.size());
  for (std::size_t j = 0; j < sa.size(); ++j) modified_[j] = sa[j] <= cut ? sa[j] : kRightSide;
  rmq_ = RangeMax<std::int32_t>(modified_);
}

std::vector<Position> BoundaryTree::modified_suffix_array() const {
  std::vector<Position> out(modified_.size());
  for (std::size_t j = 0; j < modified_.size(); ++j) out[j] = modified_position(j);
  return out;
}

void BoundaryTree::report_crossing(LeafRange r, std::size_t m, Position window_left,
                                   std::vector<Position>& out, ReportCounter* counter) const {
  const Position theta =
      std::max(boundary_last_ - static_cast<Position>(m) + 2, window_left);
  // Relative threshold; never below 0 so the -1 sentinel is never reported.
  const Position rel = std::max<Position>(theta - tree_.abs_start(), 0);
  std::vector<LeafRange> stack;
  if (!r.empty()) stack.push_back(r);
  while (!stack.empty()) {
    const LeafRange cur = stack.back();
    stack.pop_back();
    const std::size_t j = rmq_.query(modified_, cur.lo, cur.hi);
    if (counter != nullptr) ++counter->probes;
    if (modified_[j] < rel) continue;
    out.push_back(tree_.abs_start() + modified_[j]);
    const auto jj = static_cast<std::uint32_t>(j);
    if (jj > cur.lo) stack.push_back({cur.lo, jj - 1});
    if (jj < cur.hi) stack.push_back({jj + 1, cur.hi});
  }
}

std::size_t BoundaryTree::memory_bytes() const noexcept {
  return tree_.memory_bytes() + modified_.size() * sizeof(std::int32_t) + rmq_.memory_bytes();
}

BoundaryTree build_boundary_tree(TextSlice text, Position boundary_last, TreeBuilder& builder) {
  return BoundaryTree(builder.build(text), boundary_last);
}

BoundaryTree build_boundary_tree(TextSlice left_tail, TextSlice right, TreeBuilder& builder) {
  SWINDEX_CHECK(left_tail.symbols.empty() ||
                left_tail.abs_start + static_cast<Position>(left_tail.symbols.size()) == right.abs_start);
  std::vector<Symbol> joined(left_tail.symbols.begin(), left_tail.symbols.end());
  joined.insert(joined.end(), right.symbols.begin(), right.symbols.end());
  const Position start = left_tail.symbols.empty() ? right.abs_start : left_tail.abs_start;
  return build_boundary_tree(TextSlice{joined, start}, right.abs_start - 1, builder);
}

}  // namespace swindex
