#include "swindex/delayed_engine.hpp"

#include <algorithm>

#include "swindex/kmp.hpp"
#include "swindex/timely_engine.hpp"

namespace swindex {

namespace {

WindowConfig delayed_window(const EngineConfig& config, std::uint64_t delay) {
  WindowConfig wc;
  wc.w = config.w;
  wc.granularity = delay / 2;
  wc.grace = delay;
  wc.seed = config.seed;
  wc.rank.large_attempts = static_cast<int>(config.boost);
  return wc;
}

}  // namespace

DelayedEngine::DelayedEngine(const EngineConfig& config)
    : Engine(ledger_bound(config.ledger_c, config.w, effective_delay(config.w, config.delta))),
      config_(config),
      delay_(effective_delay(config.w, config.delta)),
      index_(delayed_window(config, delay_)) {
  SWINDEX_CHECK(delay_ >= 8);
}

void DelayedEngine::tick_begin() {
  ledger_.charge(1 + flush_schedule_.step());
}

void DelayedEngine::update(Symbol c) {
  if (session_) throw ProtocolError("update inside query");
  tick_begin();
  index_.append(c);
  ++count_;
  delayed_.peak_buffer = std::max(delayed_.peak_buffer, count_);
  if (count_ > delay_ / 2) start_flush();
  close_tick();
}

std::uint64_t DelayedEngine::begin_query() {
  if (session_) throw ProtocolError("nested query");
  session_.emplace(index_.active_view(), index_.store(), config_.w, GrownSchedule{16, delay_ / 4},
                   index_.builder());
  committed_ = false;
  return ++qid_;
}

void DelayedEngine::query_symbol(Symbol c) {
  if (!session_) throw ProtocolError("QC outside query");
  tick_begin();
  ledger_.charge(session_->feed(c));
  if (!committed_) {
    ++count_;
    delayed_.peak_buffer = std::max(delayed_.peak_buffer, count_);
    if (count_ > 3 * delay_ / 4) {
      // Too long to stay buffered: flush everything else, finish on the long path.
      start_flush();
      committed_ = true;
      ++delayed_.committed_mid_pattern;
    }
  }
  close_tick();
}

void DelayedEngine::end_query() {
  if (!session_) throw ProtocolError("QEND outside query");
  if (session_->length() == 0) throw ProtocolError("empty pattern");
  if (committed_ || session_->length() > delay_ / 4) {
    // Uncommitted long patterns keep their characters counted in the buffer.
    ++delayed_.long_queries;
    const Position rb = session_->rb();
    emit({qid_, rb, session_->finish(counters_), chars(), chars()});
  } else {
    ++delayed_.buffered_queries;
    buffer_.push_back({qid_, session_->pattern(), session_->rb(), chars()});
  }
  session_.reset();
}

void DelayedEngine::finish() {
  if (session_) throw ProtocolError("unterminated query");
  if (!buffer_.empty()) start_flush(true);
}

std::vector<Position> DelayedEngine::answer_buffered(const ActiveView& view, const SymbolStore& store,
                                                     const SuffixTree* t_tree, const BufferedQuery& q,
                                                     std::uint64_t w, QueryCounters& counters,
                                                     std::uint64_t* units) {
  ++counters.queries;
  std::vector<Position> out;
  const auto m = static_cast<Position>(q.pattern.size());
  const Position wl = std::max<Position>(0, q.rb - static_cast<Position>(w) + 1);
  if (m == 0 || static_cast<std::uint64_t>(m) > w || q.rb - m + 1 < wl) return out;
  if (units) *units += static_cast<std::uint64_t>(m) * (2 * view.segments.size() + 3);

  ReportCounter rc;
  report_segments(view, q.pattern, wl, out, &rc);

  // Occurrences straddling the boundary between the segments and t.
  const Position b = view.t_begin;
  if (!view.segments.empty()) {
    const Position from = std::max(store.head(), b - m + 1);
    const Position to = std::min(b + m - 2, q.rb);
    if (from <= to) {
      std::vector<Symbol> text;
      store.copy(from, to + 1, text);
      KmpMatcher(q.pattern).scan(text, [&](std::size_t rel) {
        const Position p = from + static_cast<Position>(rel);
        if (p <= b - 1 && p >= wl) out.push_back(p);
      });
    }
  }

  // Occurrences inside t that end by rb.
  if (t_tree) {
    Matcher mt = t_tree->matcher();
    bool alive = true;
    for (Symbol c : q.pattern)
      if (!(alive = mt.step(c))) break;
    if (alive) {
      std::vector<Position> inside;
      t_tree->report_le(mt.range(), q.rb - m + 1, inside, &rc);
      for (Position p : inside)
        if (p >= wl) out.push_back(p);
    }
  }

  counters.duplicates += sort_unique(out);
  counters.probes += rc.probes;
  return out;
}

void DelayedEngine::start_flush(bool final) {
  if (!final && !flush_schedule_.idle()) ++delayed_.overlapping_flushes;
  ++delayed_.flushes;
  std::uint64_t units = 0;
  const std::uint64_t now = ledger_.ticks() + (ledger_.pending() > 0 ? 1 : 0);

  if (!buffer_.empty()) {
    const ActiveView view = index_.active_view();
    std::optional<SuffixTree> t_tree;
    if (view.t_begin < view.end) {
      index_.store().copy(view.t_begin, view.end, scratch_);
      t_tree.emplace(index_.builder().build(TextSlice{scratch_, view.t_begin}));
      units += scratch_.size();
    }
    for (const BufferedQuery& q : buffer_) {
      auto positions = answer_buffered(view, index_.store(), t_tree ? &*t_tree : nullptr, q, config_.w,
                                       counters_, &units);
      emit({q.qid, q.rb, std::move(positions), q.asked_tick, now});
    }
  }
  while (index_.applied() < index_.arrivals()) units += index_.advance();

  flush_schedule_.add(units, delay_ / 4);
  buffer_.clear();
  count_ = 0;
}

StatList DelayedEngine::stats() const {
  StatList s = window_stats(index_, counters_, ledger_, ledger_violations_, limit_);
  s.insert(s.begin() + 8, {"flushes", delayed_.flushes});
  s.push_back({"effective_delay", delay_});
  s.push_back({"buffered_queries", delayed_.buffered_queries});
  s.push_back({"long_queries", delayed_.long_queries});
  s.push_back({"committed_mid_pattern", delayed_.committed_mid_pattern});
  s.push_back({"overlapping_flushes", delayed_.overlapping_flushes});
  s.push_back({"peak_buffer", delayed_.peak_buffer});
  return s;
}

}  // namespace swindex
