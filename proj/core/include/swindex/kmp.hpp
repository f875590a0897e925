#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swindex/types.hpp"

namespace swindex {

/// Knuth-Morris-Pratt automaton. failure()[i] is the length of the longest
/// proper border of pattern[0..i].
class KmpMatcher {
 public:
  explicit KmpMatcher(std::span<const Symbol> pattern) : pattern_(pattern.begin(), pattern.end()) {
    failure_.assign(pattern_.size(), 0);
    std::uint32_t k = 0;
    for (std::size_t i = 1; i < pattern_.size(); ++i) {
      while (k > 0 && pattern_[i] != pattern_[k]) k = failure_[k - 1];
      if (pattern_[i] == pattern_[k]) ++k;
      failure_[i] = k;
    }
  }

  const std::vector<std::uint32_t>& failure() const noexcept { return failure_; }
  std::size_t size() const noexcept { return pattern_.size(); }

  /// Calls emit(start) for every occurrence in text, left to right; start is
  /// relative to text.
  template <typename Emit>
  void scan(std::span<const Symbol> text, Emit&& emit) const {
    if (pattern_.empty()) return;
    std::uint32_t k = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      while (k > 0 && text[i] != pattern_[k]) k = failure_[k - 1];
      if (text[i] == pattern_[k]) ++k;
      if (k == pattern_.size()) {
        emit(i + 1 - pattern_.size());
        k = failure_[k - 1];
      }
    }
  }

 private:
  std::vector<Symbol> pattern_;
  std::vector<std::uint32_t> failure_;
};

}  // namespace swindex
