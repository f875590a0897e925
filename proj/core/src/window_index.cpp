#include "swindex/window_index.hpp"

#include <algorithm>

namespace swindex {

namespace {

int ceil_log2_ratio(std::uint64_t w, std::uint64_t g) {
  int level = 0;
  while ((g << level) < w) ++level;
  return level;
}

}  // namespace

WindowIndex::WindowIndex(const WindowConfig& config)
    : config_(config),
      cap_level_(ceil_log2_ratio(config.w, config.granularity)),
      store_(4 * config.w + 2 * config.grace + 2 * config.granularity + 16),
      builder_(config.w, config.seed, config.rank) {
  SWINDEX_CHECK(config_.w >= 1 && config_.granularity >= 1);
}

void WindowIndex::append(Symbol c) { store_.push(c); }

std::uint64_t WindowIndex::push_symbol(Symbol c) {
  append(c);
  return advance();
}

Position WindowIndex::covered_end() const noexcept {
  return segments_.empty() ? next_block_ : segments_.back().end + 1;
}

std::uint64_t WindowIndex::boundary_left_len(Position right_start, std::uint64_t right_size) const noexcept {
  const auto available = static_cast<std::uint64_t>(std::max<Position>(right_start - store_.head(), 0));
  return std::min(right_size, available);
}

std::shared_ptr<const SuffixTree> WindowIndex::make_tree(Position start, Position end) {
  store_.copy(start, end + 1, scratch_);
  return builder_.build_shared(TextSlice{scratch_, start});
}

std::shared_ptr<const BoundaryTree> WindowIndex::make_boundary(Position right_start, std::uint64_t right_size) {
  const std::uint64_t left = boundary_left_len(right_start, right_size);
  if (left == 0) return nullptr;
  const Position from = right_start - static_cast<Position>(left);
  store_.copy(from, right_start + static_cast<Position>(right_size), scratch_);
  return std::make_shared<const BoundaryTree>(
      build_boundary_tree(TextSlice{scratch_, from}, right_start - 1, builder_));
}

std::uint64_t WindowIndex::advance() {
  SWINDEX_CHECK(applied_ < arrivals());
  ++applied_;
  std::uint64_t units = schedule_.step();
  const Position p = static_cast<Position>(applied_) - 1;

  if (config_.granularity == 1) {
    // Timely: the new level-0 segment is visible immediately.
    Segment seg;
    seg.level = 0;
    seg.start = p;
    seg.end = p;
    seg.tree = make_tree(p, p);
    units += 1;
    if (!segments_.empty()) {
      seg.left_boundary = make_boundary(p, 1);
      if (seg.left_boundary) units += seg.left_boundary->tree().text_size();
    }
    segments_.push_back(std::move(seg));
    next_block_ = p + 1;
  }

  activate_due();

  if (config_.granularity > 1 &&
      static_cast<std::uint64_t>(static_cast<Position>(applied_) - next_block_) == config_.granularity) {
    PendingTask task;
    task.kind = PendingTask::Kind::kCreate;
    task.level = 0;
    task.start = next_block_;
    task.end = p;
    task.created_at = applied_;
    task.activate_at = applied_ + config_.granularity;
    task.planned_units = config_.granularity;
    if (!segments_.empty()) task.planned_units += config_.granularity + boundary_left_len(task.start, config_.granularity);
    schedule_.add(task.planned_units, config_.granularity);
    pending_.push_back(task);
    next_block_ = p + 1;
  }

  pair_neighbours();
  discard_expired();
  return units;
}

void WindowIndex::activate_due() {
  std::vector<PendingTask> due;
  std::erase_if(pending_, [&](const PendingTask& t) {
    if (t.activate_at > applied_) return false;
    due.push_back(t);
    return true;
  });
  // Fresh blocks first, then merges from the smallest (rightmost) upwards.
  std::sort(due.begin(), due.end(), [](const PendingTask& a, const PendingTask& b) {
    if (a.kind != b.kind) return a.kind == PendingTask::Kind::kCreate;
    return a.level < b.level;
  });
  for (const PendingTask& t : due) apply(t);
}

void WindowIndex::apply(const PendingTask& task) {
  if (task.kind == PendingTask::Kind::kCreate) {
    Segment seg;
    seg.level = 0;
    seg.start = task.start;
    seg.end = task.end;
    SWINDEX_CHECK(covered_end() == seg.start || segments_.empty());
    seg.tree = make_tree(seg.start, seg.end);
    if (!segments_.empty()) seg.left_boundary = make_boundary(seg.start, seg.size());
    segments_.push_back(std::move(seg));
    check_lemma(segments_.size() - 1);
    return;
  }

  const auto it = std::find_if(segments_.begin(), segments_.end(),
                               [&](const Segment& s) { return s.start == task.start && s.paired; });
  if (it == segments_.end()) return;  // cancelled by a discard
  const auto idx = static_cast<std::size_t>(it - segments_.begin());
  SWINDEX_CHECK(idx + 1 < segments_.size() && segments_[idx + 1].end == task.end);

  Segment merged;
  merged.level = task.level + 1;
  merged.start = task.start;
  merged.end = task.end;
  merged.tree = make_tree(merged.start, merged.end);
  if (idx > 0) merged.left_boundary = make_boundary(merged.start, merged.size());
  segments_.erase(segments_.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
  segments_[idx] = std::move(merged);
  check_lemma(idx);
}

void WindowIndex::check_lemma(std::size_t index) {
  ++stats_.lemma_checks;
  int expect = segments_[index].level - 1;
  for (std::size_t j = index + 1; j < segments_.size(); ++j, --expect) {
    if (segments_[j].level != expect) {
      ++stats_.lemma_violations;
      return;
    }
  }
  if (expect != -1) ++stats_.lemma_violations;
}

void WindowIndex::pair_neighbours() {
  for (std::size_t i = 0; i + 2 < segments_.size(); ++i) {
    if (segments_[i].level == segments_[i + 1].level && segments_[i].level == segments_[i + 2].level)
      ++stats_.triple_violations;
  }
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    Segment& a = segments_[i];
    Segment& b = segments_[i + 1];
    if (a.paired || b.paired || a.level != b.level || a.level >= cap_level_) continue;
    for (const PendingTask& t : pending_)
      if (t.kind == PendingTask::Kind::kMerge && t.level == a.level) ++stats_.pending_violations;
    PendingTask task;
    task.kind = PendingTask::Kind::kMerge;
    task.level = a.level;
    task.start = a.start;
    task.end = b.end;
    task.created_at = applied_;
    task.activate_at = applied_ + segment_size(a.level);
    const std::uint64_t merged = 2 * segment_size(a.level);
    task.planned_units = merged;
    if (i > 0) task.planned_units += merged + boundary_left_len(a.start, merged);
    schedule_.add(task.planned_units, segment_size(a.level));
    pending_.push_back(task);
    a.paired = true;
    b.paired = true;
    ++i;
  }
}

void WindowIndex::discard_expired() {
  // Window after `applied_` arrivals is [applied_ - w, applied_ - 1].
  const Position limit = static_cast<Position>(applied_) - static_cast<Position>(config_.w) -
                         static_cast<Position>(config_.grace);
  while (!segments_.empty() && segments_.front().end < limit) {
    if (segments_.front().paired) {
      const Position start = segments_.front().start;
      std::erase_if(pending_, [&](const PendingTask& t) {
        return t.kind == PendingTask::Kind::kMerge && t.start == start;
      });
      if (segments_.size() > 1) segments_[1].paired = false;
      ++stats_.cancelled_merges;
    }
    segments_.erase(segments_.begin());
    ++stats_.discarded_segments;
    if (!segments_.empty()) segments_.front().left_boundary.reset();
  }
  Position head = segments_.empty() ? next_block_ : segments_.front().start;
  for (const PendingTask& t : pending_)
    if (t.kind == PendingTask::Kind::kCreate) head = std::min(head, t.start);
  store_.release_before(std::min(head, static_cast<Position>(applied_)));
}

ActiveView WindowIndex::active_view() const {
  ActiveView view;
  view.segments = segments_;
  view.t_begin = segments_.empty() ? store_.head() : segments_.back().end + 1;
  view.s_begin = segments_.empty() ? view.t_begin : segments_.front().start;
  view.end = store_.end();
  return view;
}

std::map<int, int> WindowIndex::level_histogram() const {
  std::map<int, int> hist;
  for (const Segment& s : segments_) ++hist[s.level];
  return hist;
}

bool WindowIndex::check_tiling() const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (s.size() != segment_size(s.level)) return false;
    if (!s.tree || s.tree->abs_start() != s.start || s.tree->text_size() != s.size()) return false;
    if (i == 0) {
      if (s.start < store_.head() || s.left_boundary) return false;
      continue;
    }
    const Segment& prev = segments_[i - 1];
    if (prev.end + 1 != s.start || prev.level < s.level) return false;
    if (!s.left_boundary || s.left_boundary->boundary_last() != prev.end) return false;
  }
  Position expect_end = next_block_;
  for (const PendingTask& t : pending_)
    if (t.kind == PendingTask::Kind::kCreate) expect_end = std::min(expect_end, t.start);
  if (!segments_.empty() && segments_.back().end + 1 != expect_end) return false;
  return true;
}

}  // namespace swindex
