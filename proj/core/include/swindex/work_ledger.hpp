#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace swindex {

/// Background tasks whose cost is spread evenly over a fixed number of
/// future steps. Step i of a task with total T over D steps is charged
/// floor((i+1)T/D) - floor(iT/D), so the charges sum to exactly T.
class SpreadSchedule {
 public:
  void add(std::uint64_t total, std::uint64_t steps);
  /// Advances every task by one step and returns the units charged.
  std::uint64_t step();

  bool idle() const noexcept { return tasks_.empty(); }
  std::size_t active() const noexcept { return tasks_.size(); }
  std::uint64_t outstanding() const noexcept;
  /// Sum of totals of tasks that ran to completion, and what they were charged.
  std::uint64_t completed_total() const noexcept { return completed_total_; }
  std::uint64_t completed_charged() const noexcept { return completed_charged_; }

 private:
  struct Task {
    std::uint64_t total;
    std::uint64_t steps;
    std::uint64_t done = 0;
    std::uint64_t charged = 0;
  };
  std::vector<Task> tasks_;
  std::uint64_t completed_total_ = 0;
  std::uint64_t completed_charged_ = 0;
};

/// Per-character work accounting. Every character arrival, from either
/// stream, is one tick; charges made during a tick accumulate until it is
/// closed.
class WorkLedger {
 public:
  void charge(std::uint64_t units) noexcept { current_ += units; }
  std::uint64_t close_tick() noexcept;

  std::uint64_t ticks() const noexcept { return ticks_; }
  std::uint64_t max_per_tick() const noexcept { return max_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t pending() const noexcept { return current_; }

 private:
  std::uint64_t current_ = 0;
  std::uint64_t ticks_ = 0;
  std::uint64_t max_ = 0;
  std::uint64_t total_ = 0;
};

/// Units allowed per character: C * (log2(w / (delay' + 1)) + 2).
double ledger_bound(double c, std::uint64_t w, std::uint64_t effective_delay);

}  // namespace swindex
