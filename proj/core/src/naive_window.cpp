#include "swindex/naive_window.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace swindex {

NaiveWindow::NaiveWindow(std::uint64_t w, std::uint64_t capacity)
    : w_(w), ring_(std::max<std::uint64_t>({capacity, w, 1})) {}

void NaiveWindow::push(Symbol c) {
  ring_[n_ % ring_.size()] = c;
  ++n_;
}

Position NaiveWindow::first_retained() const noexcept {
  return static_cast<Position>(n_ > ring_.size() ? n_ - ring_.size() : 0);
}

Symbol NaiveWindow::at(Position p) const {
  if (p < first_retained() || p >= static_cast<Position>(n_)) throw std::out_of_range("position not retained");
  return ring_[static_cast<std::uint64_t>(p) % ring_.size()];
}

std::vector<Position> NaiveWindow::answer(std::span<const Symbol> pattern, Position rb) const {
  std::vector<Position> out;
  if (rb >= static_cast<Position>(n_)) throw std::out_of_range("window end in the future");
  const Position left = std::max<Position>(0, rb - static_cast<Position>(w_) + 1);
  if (rb >= 0 && left < first_retained()) throw std::out_of_range("window no longer retained");
  const auto m = static_cast<Position>(pattern.size());
  if (m == 0) return out;
  for (Position p = left; p + m - 1 <= rb; ++p) {
    bool match = true;
    for (Position k = 0; k < m && match; ++k) match = at(p + k) == pattern[static_cast<std::size_t>(k)];
    if (match) out.push_back(p);
  }
  return out;
}

OracleEngine::OracleEngine(const EngineConfig& config)
    : Engine(std::numeric_limits<double>::infinity()), window_(config.w, config.w + config.delta) {}

void OracleEngine::update(Symbol c) {
  if (open_) throw ProtocolError("update inside query");
  window_.push(c);
  ledger_.charge(1);
  close_tick();
}

std::uint64_t OracleEngine::begin_query() {
  if (open_) throw ProtocolError("nested query");
  open_ = true;
  pattern_.clear();
  return ++qid_;
}

void OracleEngine::query_symbol(Symbol c) {
  if (!open_) throw ProtocolError("QC outside query");
  pattern_.push_back(c);
  ledger_.charge(1);
  close_tick();
}

void OracleEngine::end_query() {
  if (!open_) throw ProtocolError("QEND outside query");
  if (pattern_.empty()) throw ProtocolError("empty pattern");
  open_ = false;
  const Position rb = static_cast<Position>(window_.arrivals()) - 1;
  emit({qid_, rb, window_.answer(pattern_, rb), chars(), chars()});
}

void OracleEngine::finish() {
  if (open_) throw ProtocolError("unterminated query");
}

StatList OracleEngine::stats() const {
  return {{"max_units_per_char", ledger_.max_per_tick()},
          {"stored_symbols", static_cast<std::uint64_t>(static_cast<Position>(window_.arrivals()) - window_.first_retained())},
          {"live_nodes", 0},
          {"hash_attempts", 0},
          {"flushes", 0},
          {"segments", 0},
          {"arrivals", window_.arrivals()},
          {"queries", qid_}};
}

}  // namespace swindex
