#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "swindex/engine.hpp"

namespace swindex {

/// Symbols are drawn uniformly from [0, alphabet). 0 picks one of
/// {1, 2, 4, 256, 2^31} per trial.
struct TrialOptions {
  EngineConfig engine;
  std::uint64_t alphabet = 4;
  std::size_t queries = 8;
  std::size_t max_updates = 0;  // 0: up to 3w + 16
  std::uint64_t seed = 1;
};

struct TrialReport {
  std::uint64_t trials = 0;
  std::uint64_t queries = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t delay_violations = 0;
  std::uint64_t ledger_violations = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t structure_violations = 0;
  std::uint64_t max_units = 0;
  std::uint64_t hash_attempts = 0;
  std::uint64_t hash_fallbacks = 0;
  std::uint64_t max_delay = 0;
  std::string first_failure;

  void merge(const TrialReport& other);
  bool ok() const noexcept {
    return mismatches == 0 && delay_violations == 0 && ledger_violations == 0 && duplicates == 0 &&
           structure_violations == 0;
  }
};

/// One random stream with interleaved queries, checked against NaiveWindow.
TrialReport run_trial(const TrialOptions& options);

/// `trials` independent trials of the base configuration with seeds
/// base.seed, base.seed + 1, ...
TrialReport run_selftest(const EngineConfig& base, std::uint64_t trials, std::uint64_t alphabet);

void print_report(const TrialReport& report, std::ostream& out);

/// Looks a statistic up by name (0 when absent).
std::uint64_t stat_value(const StatList& stats, const std::string& name);

}  // namespace swindex
