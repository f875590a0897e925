#include "swindex/alphabet_reduction.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace swindex {

namespace {

unsigned __int128 low_mask(unsigned bits) {
  if (bits >= 128) return ~static_cast<unsigned __int128>(0);
  return (static_cast<unsigned __int128>(1) << bits) - 1;
}

unsigned __int128 random_u128(std::mt19937_64& rng) {
  const unsigned __int128 hi = rng();
  const unsigned __int128 lo = rng();
  return (hi << 64) | lo;
}

unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

bool is_large_slice(std::size_t k, std::uint64_t w_scale) {
  // k >= w^(1/5)  <=>  k^5 >= w, computed with saturation.
  long double p = 1;
  for (int i = 0; i < 5; ++i) p *= static_cast<long double>(k);
  return p >= static_cast<long double>(w_scale);
}

}  // namespace

UniversalHashFn::UniversalHashFn(unsigned universe_bits, unsigned out_bits,
                                 unsigned __int128 a, unsigned __int128 b)
    : universe_bits_(universe_bits), out_bits_(out_bits) {
  mask_ = low_mask(universe_bits + out_bits);
  mul_ = a & mask_;
  add_ = b & mask_;
}

std::uint64_t UniversalHashFn::range() const noexcept {
  if (out_bits_ >= 64) return ~std::uint64_t{0};
  return std::uint64_t{1} << out_bits_;
}

UniversalHashFn sample_universal_bits(unsigned universe_bits, unsigned out_bits,
                                      std::mt19937_64& rng) {
  if (universe_bits > 64) throw std::invalid_argument("universe_bits exceeds word width");
  if (out_bits > 64) throw std::invalid_argument("out_bits exceeds word width");
  const unsigned __int128 a = random_u128(rng);
  const unsigned __int128 b = random_u128(rng);
  return UniversalHashFn(universe_bits, out_bits, a, b);
}

UniversalHashFn sample_universal(unsigned universe_bits, std::uint64_t hash_range,
                                 std::mt19937_64& rng) {
  if (hash_range == 0) throw std::invalid_argument("hash_range must be positive");
  return sample_universal_bits(universe_bits, ceil_log2(hash_range), rng);
}

ScratchPool::ScratchPool(std::size_t slots)
    : slots_(slots),
      slot_to_ref_(std::make_unique<std::uint32_t[]>(slots)),
      ref_to_slot_(std::make_unique<std::uint32_t[]>(slots)),
      value_(std::make_unique<Symbol[]>(slots)) {}

void ScratchPool::scramble(std::mt19937_64& rng) {
  for (std::size_t i = 0; i < slots_; ++i) {
    slot_to_ref_[i] = static_cast<std::uint32_t>(rng());
    ref_to_slot_[i] = static_cast<std::uint32_t>(rng());
    value_[i] = rng();
  }
  // Make some stale entries look plausible: valid refs pointing at each other.
  for (std::size_t i = 0; i + 1 < slots_; i += 2) {
    slot_to_ref_[i] = static_cast<std::uint32_t>(i / 2);
    ref_to_slot_[i / 2] = static_cast<std::uint32_t>(i);
  }
  count_ = 0;
}

ScratchPoolSet::Lease::~Lease() {
  if (owner_ != nullptr && pool_) owner_->release(std::move(pool_));
}

ScratchPoolSet::Lease ScratchPoolSet::acquire() {
  std::unique_ptr<ScratchPool> pool;
  if (free_.empty()) {
    pool = std::make_unique<ScratchPool>(slots_);
    ++allocated_;
  } else {
    pool = std::move(free_.back());
    free_.pop_back();
  }
  pool->clear();
  ++live_;
  max_live_ = std::max(max_live_, live_);
  return Lease(this, std::move(pool));
}

void ScratchPoolSet::release(std::unique_ptr<ScratchPool> pool) {
  --live_;
  free_.push_back(std::move(pool));
}

std::unordered_map<Symbol, Rank> RankReduction::forward_map() const {
  std::unordered_map<Symbol, Rank> fwd;
  fwd.reserve(inverse.size());
  for (std::size_t i = 0; i < inverse.size(); ++i)
    fwd.emplace(inverse[i], static_cast<Rank>(i + 1));
  return fwd;
}

std::size_t small_path_range(std::uint64_t w_scale) {
  if (w_scale < 2) return 1;
  const double lg = std::log2(static_cast<double>(w_scale));
  const auto slots = static_cast<std::uint64_t>(std::ceil(static_cast<double>(w_scale) / lg));
  return std::bit_ceil(std::max<std::uint64_t>(slots, 1));
}

namespace detail {

void radix_sort_by_hash(std::vector<HashedSymbol>& items, unsigned bits) {
  if (items.size() < 2 || bits == 0) return;
  std::vector<HashedSymbol> tmp(items.size());
  for (unsigned shift = 0; shift < bits; shift += 8) {
    std::array<std::size_t, 257> count{};
    for (const auto& it : items) ++count[((it.hash >> shift) & 0xff) + 1];
    for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
    for (const auto& it : items) tmp[count[(it.hash >> shift) & 0xff]++] = it;
    items.swap(tmp);
  }
}

}  // namespace detail

RankResult rank_by_sorting(std::span<const Symbol> slice) {
  RankResult out;
  out.path = ReductionPath::kFallback;
  std::vector<Symbol> distinct(slice.begin(), slice.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  out.reduced.reserve(slice.size());
  for (Symbol x : slice) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), x);
    out.reduced.push_back(static_cast<Rank>(it - distinct.begin()) + 1);
  }
  out.reduction.inverse = std::move(distinct);
  return out;
}

namespace {

bool try_large(std::span<const Symbol> slice, const UniversalHashFn& f, RankResult& out) {
  // Sort (f(x), i) by hash; each run of equal hashes must hold one symbol.
  std::vector<detail::HashedSymbol> items;
  items.reserve(slice.size());
  for (std::size_t i = 0; i < slice.size(); ++i) items.push_back({f(slice[i]), i});
  detail::radix_sort_by_hash(items, f.out_bits());

  out.reduced.assign(slice.size(), 0);
  out.reduction.inverse.clear();
  Rank rank = 0;
  for (std::size_t j = 0; j < items.size(); ++j) {
    const Symbol x = slice[items[j].symbol];
    if (j == 0 || items[j].hash != items[j - 1].hash) {
      ++rank;
      out.reduction.inverse.push_back(x);
    } else if (slice[items[j - 1].symbol] != x) {
      return false;
    }
    out.reduced[items[j].symbol] = rank;
  }
  return true;
}

bool try_small(std::span<const Symbol> slice, const UniversalHashFn& f, ScratchPool& pool,
               std::vector<std::uint64_t>& slots, RankResult& out) {
  pool.clear();
  slots.resize(slice.size());
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const std::uint64_t slot = f(slice[i]);
    slots[i] = slot;
    if (pool.is_set(slot)) {
      if (pool.get(slot) != slice[i]) return false;
    } else {
      pool.set(slot, slice[i]);
    }
  }
  const std::size_t sigma = pool.written();
  out.reduction.inverse.resize(sigma);
  for (std::uint32_t r = 0; r < sigma; ++r) out.reduction.inverse[r] = pool.value_at_ref(r);
  out.reduced.resize(slice.size());
  for (std::size_t i = 0; i < slice.size(); ++i) out.reduced[i] = pool.ref(slots[i]) + 1;
  return true;
}

}  // namespace

RankResult reduce_rank_space(std::span<const Symbol> slice, std::uint64_t w_scale,
                             std::mt19937_64& rng, ScratchPoolSet& pools,
                             const RankOptions& opts) {
  if (w_scale < 16 || slice.empty()) return rank_by_sorting(slice);

  RankResult out;
  if (is_large_slice(slice.size(), w_scale)) {
    const unsigned bits = std::min(64u, 4 * ceil_log2(w_scale));
    for (int a = 0; a < opts.large_attempts; ++a) {
      ++out.attempts;
      const UniversalHashFn f = opts.forced_hash_range != 0
                                    ? sample_universal(64, opts.forced_hash_range, rng)
                                    : sample_universal_bits(64, bits, rng);
      if (try_large(slice, f, out)) {
        out.path = ReductionPath::kLarge;
        return out;
      }
    }
  } else {
    auto pool = pools.acquire();
    const std::uint64_t range =
        opts.forced_hash_range != 0 ? opts.forced_hash_range : pool->capacity();
    std::vector<std::uint64_t> slots;
    for (int a = 0; a < opts.small_attempts; ++a) {
      ++out.attempts;
      const UniversalHashFn f = sample_universal(64, std::min<std::uint64_t>(range, pool->capacity()), rng);
      if (try_small(slice, f, *pool, slots, out)) {
        out.path = ReductionPath::kSmall;
        return out;
      }
    }
  }
  const int attempts = out.attempts;
  out = rank_by_sorting(slice);
  out.attempts = attempts;
  return out;
}

}  // namespace swindex
