#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "swindex/types.hpp"

namespace swindex {

/// Open-addressing dictionary from (node, first edge symbol) to child node.
/// Built once per tree; expected constant probes per lookup.
class EdgeMap {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  EdgeMap() = default;
  explicit EdgeMap(std::size_t expected_edges) {
    const std::size_t cap = std::bit_ceil(std::max<std::size_t>(2 * expected_edges, 4));
    slots_.assign(cap, Slot{0, kNone, kNone});
    mask_ = cap - 1;
  }

  void insert(std::uint32_t node, Symbol sym, std::uint32_t child) {
    std::size_t i = hash(node, sym) & mask_;
    while (slots_[i].node != kNone) i = (i + 1) & mask_;
    slots_[i] = Slot{sym, node, child};
    ++size_;
  }

  std::uint32_t find(std::uint32_t node, Symbol sym) const noexcept {
    if (slots_.empty()) return kNone;
    std::size_t i = hash(node, sym) & mask_;
    while (true) {
      const Slot& s = slots_[i];
      if (s.node == kNone) return kNone;
      if (s.node == node && s.sym == sym) return s.child;
      i = (i + 1) & mask_;
    }
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t memory_bytes() const noexcept { return slots_.size() * sizeof(Slot); }

 private:
  struct Slot {
    Symbol sym;
    std::uint32_t node;
    std::uint32_t child;
  };

  static std::size_t hash(std::uint32_t node, Symbol sym) noexcept {
    std::uint64_t z = sym ^ (static_cast<std::uint64_t>(node) * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace swindex
