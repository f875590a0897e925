#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <vector>

#include "swindex/types.hpp"

namespace swindex {

/// Ring buffer over the retained suffix of the stream, addressed by
/// absolute position. Grows if the retained span ever exceeds capacity.
class SymbolStore {
 public:
  explicit SymbolStore(std::size_t capacity = 16)
      : buf_(std::bit_ceil(std::max<std::size_t>(capacity, 2))), mask_(buf_.size() - 1) {}

  void push(Symbol c) {
    if (size() == buf_.size()) grow();
    buf_[static_cast<std::size_t>(end_) & mask_] = c;
    ++end_;
    peak_ = std::max(peak_, size());
  }

  Symbol at(Position p) const {
    SWINDEX_CHECK(p >= head_ && p < end_);
    return buf_[static_cast<std::size_t>(p) & mask_];
  }

  /// Copies [from, to) into out (replacing its contents).
  void copy(Position from, Position to, std::vector<Symbol>& out) const {
    SWINDEX_CHECK(from >= head_ && from <= to && to <= end_);
    out.resize(static_cast<std::size_t>(to - from));
    for (Position p = from; p < to; ++p) out[static_cast<std::size_t>(p - from)] = buf_[static_cast<std::size_t>(p) & mask_];
  }

  void release_before(Position p) {
    SWINDEX_CHECK(p <= end_);
    head_ = std::max(head_, p);
  }

  Position head() const noexcept { return head_; }
  Position end() const noexcept { return end_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(end_ - head_); }
  std::size_t peak() const noexcept { return peak_; }
  std::size_t capacity() const noexcept { return buf_.size(); }

 private:
  void grow() {
    std::vector<Symbol> next(buf_.size() * 2);
    const std::size_t next_mask = next.size() - 1;
    for (Position p = head_; p < end_; ++p) next[static_cast<std::size_t>(p) & next_mask] = buf_[static_cast<std::size_t>(p) & mask_];
    buf_.swap(next);
    mask_ = next_mask;
  }

  std::vector<Symbol> buf_;
  std::size_t mask_;
  Position head_ = 0;
  Position end_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace swindex
