#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "swindex/types.hpp"

namespace swindex {

/// One member of the multiply-add-shift family
///   h(x) = ((a*x + b) mod 2^(u+M)) div 2^u
/// for u-bit keys and M output bits. The family is strongly universal, so
/// Pr[h(x) = h(y)] <= 2^-M for x != y.
class UniversalHashFn {
 public:
  UniversalHashFn() = default;
  UniversalHashFn(unsigned universe_bits, unsigned out_bits, unsigned __int128 a,
                  unsigned __int128 b);

  std::uint64_t operator()(Symbol x) const noexcept {
    unsigned __int128 v = mul_ * static_cast<unsigned __int128>(x) + add_;
    v &= mask_;
    return static_cast<std::uint64_t>(v >> universe_bits_);
  }

  unsigned universe_bits() const noexcept { return universe_bits_; }
  unsigned out_bits() const noexcept { return out_bits_; }
  /// Size of the output range, saturated at 2^64 - 1 for 64 output bits.
  std::uint64_t range() const noexcept;

  bool operator==(const UniversalHashFn&) const = default;

 private:
  unsigned universe_bits_ = 64;
  unsigned out_bits_ = 0;
  unsigned __int128 mul_ = 0;
  unsigned __int128 add_ = 0;
  unsigned __int128 mask_ = 0;
};

/// Samples a hash function onto [0, hash_range) with hash_range rounded up to
/// a power of two. Throws std::invalid_argument if hash_range is 0 or
/// universe_bits exceeds 64.
UniversalHashFn sample_universal(unsigned universe_bits, std::uint64_t hash_range,
                                 std::mt19937_64& rng);

/// Same, with the output width given directly in bits (0..64).
UniversalHashFn sample_universal_bits(unsigned universe_bits, unsigned out_bits,
                                      std::mt19937_64& rng);

/// Radix-sorts (h(x), x) pairs by hash and reports whether distinct symbols
/// received distinct hash values. `bits` bounds the width of h's output.
template <typename Hash>
bool check_injective(const Hash& h, std::span<const Symbol> slice, unsigned bits = 64);

/// Array of slots with O(1) reset. A slot counts as written iff its forward
/// and backward cross-references agree, so stale contents from an earlier
/// use are never mistaken for live data.
class ScratchPool {
 public:
  explicit ScratchPool(std::size_t slots);

  std::size_t capacity() const noexcept { return slots_; }
  std::size_t written() const noexcept { return count_; }

  bool is_set(std::size_t slot) const noexcept {
    const std::uint32_t r = slot_to_ref_[slot];
    return r < count_ && ref_to_slot_[r] == slot;
  }
  Symbol get(std::size_t slot) const noexcept { return value_[slot_to_ref_[slot]]; }
  /// Order in which the slot was first written (0-based). Requires is_set.
  std::uint32_t ref(std::size_t slot) const noexcept { return slot_to_ref_[slot]; }
  Symbol value_at_ref(std::uint32_t r) const noexcept { return value_[r]; }

  void set(std::size_t slot, Symbol v) noexcept {
    if (!is_set(slot)) {
      slot_to_ref_[slot] = static_cast<std::uint32_t>(count_);
      ref_to_slot_[count_] = static_cast<std::uint32_t>(slot);
      ++count_;
    }
    value_[slot_to_ref_[slot]] = v;
  }

  void clear() noexcept { count_ = 0; }

  /// Overwrites every array with garbage while keeping the pool cleared.
  void scramble(std::mt19937_64& rng);

 private:
  std::size_t slots_;
  std::size_t count_ = 0;
  std::unique_ptr<std::uint32_t[]> slot_to_ref_;
  std::unique_ptr<std::uint32_t[]> ref_to_slot_;
  std::unique_ptr<Symbol[]> value_;
};

/// Free list of equally sized scratch pools, one per concurrent construction.
class ScratchPoolSet {
 public:
  class Lease {
   public:
    Lease(ScratchPoolSet* owner, std::unique_ptr<ScratchPool> pool)
        : owner_(owner), pool_(std::move(pool)) {}
    Lease(Lease&&) noexcept = default;
    Lease& operator=(Lease&&) = delete;
    ~Lease();
    ScratchPool& operator*() const { return *pool_; }
    ScratchPool* operator->() const { return pool_.get(); }

   private:
    ScratchPoolSet* owner_;
    std::unique_ptr<ScratchPool> pool_;
  };

  explicit ScratchPoolSet(std::size_t slots_per_pool) : slots_(slots_per_pool) {}

  Lease acquire();
  std::size_t slots_per_pool() const noexcept { return slots_; }
  std::size_t live() const noexcept { return live_; }
  std::size_t max_live() const noexcept { return max_live_; }
  std::size_t allocated() const noexcept { return allocated_; }

 private:
  void release(std::unique_ptr<ScratchPool> pool);

  std::size_t slots_;
  std::vector<std::unique_ptr<ScratchPool>> free_;
  std::size_t live_ = 0;
  std::size_t max_live_ = 0;
  std::size_t allocated_ = 0;
};

/// Bijection between the distinct symbols of a slice and [1, sigma_size].
struct RankReduction {
  std::vector<Symbol> inverse;  // rank r maps back to inverse[r - 1]

  std::size_t sigma_size() const noexcept { return inverse.size(); }
  Symbol symbol_of(Rank r) const { return inverse.at(r - 1); }
  std::unordered_map<Symbol, Rank> forward_map() const;
};

enum class ReductionPath { kLarge, kSmall, kFallback };

struct RankOptions {
  int large_attempts = 1;   // boost copies on the large path
  int small_attempts = 11;  // independent retries on the small path
  /// Test hook: replaces the hash range of every attempt (0 = off).
  std::uint64_t forced_hash_range = 0;
};

struct RankResult {
  std::vector<Rank> reduced;
  RankReduction reduction;
  int attempts = 0;
  ReductionPath path = ReductionPath::kFallback;
};

/// Scratch-pool slot count for window scale w: ceil(w / log2 w).
std::size_t small_path_range(std::uint64_t w_scale);

/// Maps the slice into rank space. Long slices hash into [0, w^4) and verify
/// injectivity by radix sort; short slices hash into [0, w / log w) and
/// verify through a scratch pool. Exhausted attempts fall back to a
/// comparison sort, so the call always succeeds.
RankResult reduce_rank_space(std::span<const Symbol> slice, std::uint64_t w_scale,
                             std::mt19937_64& rng, ScratchPoolSet& pools,
                             const RankOptions& opts = {});

/// Deterministic O(k log k) ranking by sorted order of the symbols.
RankResult rank_by_sorting(std::span<const Symbol> slice);

namespace detail {

struct HashedSymbol {
  std::uint64_t hash;
  Symbol symbol;
};

/// LSD radix sort on the low `bits` bits of the hash field, 8 bits per pass.
void radix_sort_by_hash(std::vector<HashedSymbol>& items, unsigned bits);

}  // namespace detail

template <typename Hash>
bool check_injective(const Hash& h, std::span<const Symbol> slice, unsigned bits) {
  std::vector<detail::HashedSymbol> items;
  items.reserve(slice.size());
  for (Symbol x : slice) items.push_back({static_cast<std::uint64_t>(h(x)), x});
  detail::radix_sort_by_hash(items, bits);
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].hash == items[i - 1].hash && items[i].symbol != items[i - 1].symbol)
      return false;
  }
  return true;
}

}  // namespace swindex
