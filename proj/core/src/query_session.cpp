#include "swindex/query_session.hpp"

#include <algorithm>
#include <bit>

namespace swindex {

namespace {

bool run_matcher(Matcher& mt, std::span<const Symbol> pattern) {
  for (Symbol c : pattern)
    if (!mt.step(c)) return false;
  return true;
}

// Cases (a) and (b) from matchers that have consumed the whole pattern.
void collect(const ActiveView& view, std::size_t m, Position window_left,
             const std::vector<Matcher>& segment_matchers,
             const std::vector<std::optional<Matcher>>& boundary_matchers, std::vector<Position>& out,
             ReportCounter* counter) {
  const auto& segs = view.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& seg = segs[i];
    if (seg.end < window_left) continue;
    const Matcher& mt = segment_matchers[i];
    if (mt.alive() && mt.matched() == m) {
      if (seg.start < window_left)
        seg.tree->report_ge(mt.range(), window_left, out, counter);
      else
        seg.tree->report_all(mt.range(), out);
    }
    if (i == 0 || !seg.left_boundary || seg.size() < m || segs[i - 1].end < window_left) continue;
    const auto& bm = boundary_matchers[i];
    if (bm && bm->alive() && bm->matched() == m)
      seg.left_boundary->report_crossing(bm->range(), m, window_left, out, counter);
  }
}

}  // namespace

std::uint64_t sort_unique(std::vector<Position>& out) {
  std::sort(out.begin(), out.end());
  const auto before = out.size();
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return before - out.size();
}

std::uint64_t report_segments(const ActiveView& view, std::span<const Symbol> pattern,
                              Position window_left, std::vector<Position>& out,
                              ReportCounter* counter) {
  std::uint64_t steps = 0;
  std::vector<Matcher> seg;
  std::vector<std::optional<Matcher>> bnd;
  seg.reserve(view.segments.size());
  bnd.reserve(view.segments.size());
  for (const Segment& s : view.segments) {
    seg.push_back(s.tree->matcher());
    run_matcher(seg.back(), pattern);
    steps += seg.back().matched() + 1;
    if (s.left_boundary && s.size() >= pattern.size()) {
      bnd.emplace_back(s.left_boundary->matcher());
      run_matcher(*bnd.back(), pattern);
      steps += bnd.back()->matched() + 1;
    } else {
      bnd.emplace_back();
    }
  }
  collect(view, pattern.size(), window_left, seg, bnd, out, counter);
  return steps;
}

QuerySession::QuerySession(ActiveView view, const SymbolStore& store, std::uint64_t w,
                           GrownSchedule grown, TreeBuilder& builder)
    : view_(std::move(view)), store_(&store), w_(w), grown_(grown), builder_(&builder) {
  segment_matchers_.reserve(view_.segments.size());
  boundary_matchers_.reserve(view_.segments.size());
  for (const Segment& s : view_.segments) {
    segment_matchers_.push_back(s.tree->matcher());
    if (s.left_boundary)
      boundary_matchers_.emplace_back(s.left_boundary->matcher());
    else
      boundary_matchers_.emplace_back();
  }
}

Position QuerySession::window_left() const noexcept {
  return std::max<Position>(0, rb() - static_cast<Position>(w_) + 1);
}

std::uint64_t QuerySession::grown_charge(std::uint64_t j) const {
  const auto avail = static_cast<std::uint64_t>(std::max<Position>(view_.end - store_->head(), 0));
  const int top = std::bit_width(w_) - 1;
  std::uint64_t units = 0;
  for (int l = 0; l <= top; ++l) {
    const std::uint64_t span = std::uint64_t{2} << l;
    if (span <= grown_.min_span || j >= span) continue;
    const std::uint64_t size = std::min<std::uint64_t>(avail, static_cast<std::uint64_t>(grown_.rho) * span);
    const std::uint64_t build_steps = l == 0 ? 1 : (std::uint64_t{1} << (l - 1));
    if (j <= build_steps)
      units += j * size / build_steps - (j - 1) * size / build_steps;
    else if (j <= (std::uint64_t{1} << l))
      units += 2;
    else
      units += 1;
  }
  return units;
}

std::uint64_t QuerySession::feed(Symbol c) {
  pattern_.push_back(c);
  std::uint64_t units = 1;
  for (Matcher& mt : segment_matchers_) {
    if (!mt.alive()) continue;
    mt.step(c);
    ++units;
  }
  for (auto& bm : boundary_matchers_) {
    if (!bm || !bm->alive()) continue;
    bm->step(c);
    ++units;
  }
  return units + grown_charge(pattern_.size());
}

std::vector<Position> QuerySession::finish(QueryCounters& counters) {
  ++counters.queries;
  std::vector<Position> out;
  const std::size_t m = pattern_.size();
  const Position rb = this->rb();
  const Position wl = window_left();
  const auto mm = static_cast<Position>(m);
  if (m == 0 || m > w_ || rb - mm + 1 < wl) return out;

  ReportCounter counter;
  collect(view_, m, wl, segment_matchers_, boundary_matchers_, out, &counter);

  // Case (c): occurrences ending right of the rightmost segment of size >= m.
  Position theta = wl;
  for (auto it = view_.segments.rbegin(); it != view_.segments.rend(); ++it) {
    if (it->size() >= m) {
      theta = std::max(it->end - mm + 2, wl);
      break;
    }
  }
  if (theta <= rb - mm + 1) {
    Position start = std::max(store_->head(), rb - static_cast<Position>(grown_.rho) * mm + 1);
    if (start > theta) {
      ++counters.grown_overflow;
      start = theta;
    }
    store_->copy(start, rb + 1, scratch_);
    const SuffixTree grown = builder_->build(TextSlice{scratch_, start});
    Matcher mt = grown.matcher();
    if (run_matcher(mt, pattern_)) grown.report_ge(mt.range(), theta, out, &counter);
  }

  counters.duplicates += sort_unique(out);
  counters.probes += counter.probes;
  return out;
}

}  // namespace swindex
