#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace swindex {

/// Constant-time range arg-extreme index. Positions are grouped into 64-wide
/// blocks; inside a block a per-position bitmask encodes the monotone stack,
/// across blocks a sparse table over block winners answers the middle part.
/// The index does not own the data; queries take the same span it was
/// built from.
template <typename T, typename Better>
class RmqIndex {
 public:
  RmqIndex() = default;

  explicit RmqIndex(std::span<const T> data) : n_(data.size()) {
    masks_.resize(n_);
    for (std::size_t start = 0; start < n_; start += kBlock) {
      const std::size_t end = std::min(n_, start + kBlock);
      std::uint64_t cur = 0;
      for (std::size_t i = start; i < end; ++i) {
        while (cur != 0) {
          const std::size_t top = start + (63 - std::countl_zero(cur));
          if (better_(data[top], data[i])) break;
          cur &= ~(std::uint64_t{1} << (top - start));
        }
        cur |= std::uint64_t{1} << (i - start);
        masks_[i] = cur;
      }
    }
    const std::size_t blocks = (n_ + kBlock - 1) / kBlock;
    if (blocks == 0) return;
    table_.emplace_back(blocks);
    for (std::size_t b = 0; b < blocks; ++b)
      table_[0][b] = static_cast<std::uint32_t>(in_block(b * kBlock, std::min(n_, (b + 1) * kBlock) - 1));
    for (std::size_t k = 1; (std::size_t{1} << k) <= blocks; ++k) {
      const std::size_t half = std::size_t{1} << (k - 1);
      std::vector<std::uint32_t> row(blocks - (std::size_t{1} << k) + 1);
      for (std::size_t b = 0; b < row.size(); ++b)
        row[b] = pick(data, table_[k - 1][b], table_[k - 1][b + half]);
      table_.push_back(std::move(row));
    }
  }

  std::size_t size() const noexcept { return n_; }

  /// Index in [i, j] attaining the extreme value. Requires i <= j < size().
  std::size_t query(std::span<const T> data, std::size_t i, std::size_t j) const {
    const std::size_t bi = i / kBlock;
    const std::size_t bj = j / kBlock;
    if (bi == bj) return in_block(i, j);
    std::uint32_t best = pick(data, static_cast<std::uint32_t>(in_block(i, (bi + 1) * kBlock - 1)),
                              static_cast<std::uint32_t>(in_block(bj * kBlock, j)));
    if (bj > bi + 1) {
      const std::size_t lo = bi + 1;
      const std::size_t hi = bj - 1;
      const int k = std::bit_width(hi - lo + 1) - 1;
      best = pick(data, best, pick(data, table_[k][lo], table_[k][hi - (std::size_t{1} << k) + 1]));
    }
    return best;
  }

  std::size_t memory_bytes() const noexcept {
    std::size_t bytes = masks_.size() * sizeof(std::uint64_t);
    for (const auto& row : table_) bytes += row.size() * sizeof(std::uint32_t);
    return bytes;
  }

 private:
  static constexpr std::size_t kBlock = 64;

  std::size_t in_block(std::size_t i, std::size_t j) const {
    const std::size_t start = i - i % kBlock;
    const std::uint64_t m = masks_[j] & (~std::uint64_t{0} << (i - start));
    return start + static_cast<std::size_t>(std::countr_zero(m));
  }

  std::uint32_t pick(std::span<const T> data, std::uint32_t a, std::uint32_t b) const {
    return better_(data[b], data[a]) ? b : a;
  }

  std::size_t n_ = 0;
  Better better_{};
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::uint32_t>> table_;
};

template <typename T>
using RangeMax = RmqIndex<T, std::greater<T>>;
template <typename T>
using RangeMin = RmqIndex<T, std::less<T>>;

}  // namespace swindex
