#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swindex/engine.hpp"

namespace swindex {

/// Brute-force reference: the last `capacity` symbols in a ring, answering
/// window queries by direct comparison.
class NaiveWindow {
 public:
  NaiveWindow(std::uint64_t w, std::uint64_t capacity);

  void push(Symbol c);
  /// Occurrence starts of pattern in [max(0, rb-w+1), rb]. Throws
  /// std::out_of_range if that window is no longer retained.
  std::vector<Position> answer(std::span<const Symbol> pattern, Position rb) const;

  std::uint64_t arrivals() const noexcept { return n_; }
  std::uint64_t w() const noexcept { return w_; }
  Position first_retained() const noexcept;
  Symbol at(Position p) const;

 private:
  std::uint64_t w_;
  std::vector<Symbol> ring_;
  std::uint64_t n_ = 0;
};

/// NaiveWindow behind the engine interface; answers every query at once.
class OracleEngine final : public Engine {
 public:
  explicit OracleEngine(const EngineConfig& config);

  void update(Symbol c) override;
  std::uint64_t begin_query() override;
  void query_symbol(Symbol c) override;
  void end_query() override;
  void finish() override;
  StatList stats() const override;
  const char* name() const override { return "oracle"; }

 private:
  NaiveWindow window_;
  bool open_ = false;
  std::uint64_t qid_ = 0;
  std::vector<Symbol> pattern_;
};

}  // namespace swindex
