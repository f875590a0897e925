#include "swindex/work_ledger.hpp"

#include <algorithm>
#include <cmath>

namespace swindex {

void SpreadSchedule::add(std::uint64_t total, std::uint64_t steps) {
  tasks_.push_back(Task{total, std::max<std::uint64_t>(steps, 1)});
}

std::uint64_t SpreadSchedule::step() {
  std::uint64_t units = 0;
  for (Task& t : tasks_) {
    const unsigned __int128 before = static_cast<unsigned __int128>(t.done) * t.total / t.steps;
    ++t.done;
    const unsigned __int128 after = static_cast<unsigned __int128>(t.done) * t.total / t.steps;
    const auto share = static_cast<std::uint64_t>(after - before);
    t.charged += share;
    units += share;
  }
  std::erase_if(tasks_, [this](const Task& t) {
    if (t.done < t.steps) return false;
    completed_total_ += t.total;
    completed_charged_ += t.charged;
    return true;
  });
  return units;
}

std::uint64_t SpreadSchedule::outstanding() const noexcept {
  std::uint64_t sum = 0;
  for (const Task& t : tasks_) sum += t.total - t.charged;
  return sum;
}

std::uint64_t WorkLedger::close_tick() noexcept {
  const std::uint64_t units = current_;
  max_ = std::max(max_, units);
  total_ += units;
  ++ticks_;
  current_ = 0;
  return units;
}

double ledger_bound(double c, std::uint64_t w, std::uint64_t effective_delay) {
  return c * (std::log2(static_cast<double>(w) / (static_cast<double>(effective_delay) + 1.0)) + 2.0);
}

}  // namespace swindex
