#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "swindex/alphabet_reduction.hpp"
#include "swindex/edge_map.hpp"
#include "swindex/rmq.hpp"
#include "swindex/types.hpp"

namespace swindex {

/// A run of stream symbols together with the absolute position of the first.
struct TextSlice {
  std::span<const Symbol> symbols;
  Position abs_start = 0;
};

/// Inclusive range [lo, hi] of suffix-array slots; empty when lo > hi.
struct LeafRange {
  std::uint32_t lo = 1;
  std::uint32_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  std::size_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const LeafRange&) const = default;
};

/// Counts range-extreme probes made while reporting.
struct ReportCounter {
  std::uint64_t probes = 0;
};

/// Live suffix-tree node tally shared by every tree of one builder.
struct NodeTally {
  std::int64_t live = 0;
  std::int64_t peak = 0;
};

struct BuildStats {
  std::uint64_t trees = 0;
  std::uint64_t symbols = 0;
  std::uint64_t hash_attempts = 0;
  std::uint64_t large_path = 0;
  std::uint64_t small_path = 0;
  std::uint64_t fallbacks = 0;
};

class Matcher;

/// Compact trie over the suffixes of slice + terminator. Children are keyed by
/// their first symbol in the original alphabet; edge labels are offsets into
/// the tree's own copy of the slice. Immutable once built.
class SuffixTree {
 public:
  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNoNode = EdgeMap::kNone;

  SuffixTree(SuffixTree&&) noexcept = default;
  SuffixTree& operator=(SuffixTree&&) = delete;
  SuffixTree(const SuffixTree&) = delete;
  SuffixTree& operator=(const SuffixTree&) = delete;
  ~SuffixTree();

  std::size_t text_size() const noexcept { return text_.size(); }
  Position abs_start() const noexcept { return abs_start_; }
  /// Absolute position of the last real symbol.
  Position abs_last() const noexcept { return abs_start_ + static_cast<Position>(text_.size()) - 1; }
  std::span<const Symbol> text() const noexcept { return text_; }

  std::size_t leaf_count() const noexcept { return sa_.size(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  LeafRange root_range() const noexcept { return {0, static_cast<std::uint32_t>(sa_.size() - 1)}; }

  /// Suffix array entry j as an absolute stream position. The terminator
  /// leaf reports abs_last() + 1.
  Position leaf_position(std::size_t j) const noexcept { return abs_start_ + sa_[j]; }
  std::span<const std::int32_t> relative_suffix_array() const noexcept { return sa_; }
  std::vector<Position> suffix_array() const;

  std::uint32_t parent(std::uint32_t v) const { return nodes_.at(v).parent; }
  std::uint32_t depth(std::uint32_t v) const { return nodes_.at(v).depth; }
  LeafRange range(std::uint32_t v) const { return {nodes_.at(v).lo, nodes_.at(v).hi}; }
  bool is_leaf(std::uint32_t v) const { return nodes_.at(v).lo == nodes_.at(v).hi && v != kRoot; }
  /// Child of v whose edge starts with c, or kNoNode.
  std::uint32_t child(std::uint32_t v, Symbol c) const noexcept { return edges_.find(v, c); }
  /// Symbol at string depth d on the path to v; nullopt-like false for the terminator.
  bool path_symbol(std::uint32_t v, std::uint32_t d, Symbol& out) const noexcept;

  Matcher matcher() const;

  std::size_t argmax(LeafRange r) const { return rmq_max_.query(sa_, r.lo, r.hi); }
  std::size_t argmin(LeafRange r) const { return rmq_min_.query(sa_, r.lo, r.hi); }

  void report_all(LeafRange r, std::vector<Position>& out) const;
  /// Positions p >= theta in the range, by recursive range-maximum splitting.
  void report_ge(LeafRange r, Position theta, std::vector<Position>& out,
                 ReportCounter* counter = nullptr) const;
  /// Positions p <= theta in the range, by recursive range-minimum splitting.
  void report_le(LeafRange r, Position theta, std::vector<Position>& out,
                 ReportCounter* counter = nullptr) const;

  std::size_t memory_bytes() const noexcept;

 private:
  friend class Matcher;
  friend SuffixTree build_suffix_tree(TextSlice, std::uint64_t, std::mt19937_64&,
                                      ScratchPoolSet&, const RankOptions&, BuildStats*,
                                      std::shared_ptr<NodeTally>);

  struct Node {
    std::uint32_t parent;
    std::uint32_t depth;  // string depth, terminator included
    std::uint32_t lo;
    std::uint32_t hi;
  };

  SuffixTree() = default;

  std::vector<Symbol> text_;
  Position abs_start_ = 0;
  std::vector<Node> nodes_;
  EdgeMap edges_;
  std::vector<std::int32_t> sa_;
  RangeMax<std::int32_t> rmq_max_;
  RangeMin<std::int32_t> rmq_min_;
  std::shared_ptr<NodeTally> tally_;
};

/// Streaming locus search: one symbol per step, constant dictionary probes.
class Matcher {
 public:
  explicit Matcher(const SuffixTree& tree) : tree_(&tree) {}

  /// Consumes c. Requires alive(); returns whether the extended pattern still
  /// occurs in the slice.
  bool step(Symbol c);

  bool alive() const noexcept { return alive_; }
  std::uint32_t matched() const noexcept { return len_; }
  std::uint32_t node() const noexcept { return node_; }
  /// Leaf range of the locus; empty when dead.
  LeafRange range() const noexcept;
  const SuffixTree& tree() const noexcept { return *tree_; }

 private:
  const SuffixTree* tree_;
  std::uint32_t node_ = SuffixTree::kRoot;
  std::uint32_t len_ = 0;
  bool alive_ = true;
};

/// Builds the suffix tree of a non-empty slice: rank-space reduction, induced
/// sorting, then a single stack pass over the suffix and LCP arrays.
SuffixTree build_suffix_tree(TextSlice slice, std::uint64_t w_scale, std::mt19937_64& rng,
                             ScratchPoolSet& pools, const RankOptions& opts = {},
                             BuildStats* stats = nullptr,
                             std::shared_ptr<NodeTally> tally = nullptr);

/// Owns the randomness, scratch pools and counters shared by all
/// constructions of one engine.
class TreeBuilder {
 public:
  TreeBuilder(std::uint64_t w_scale, std::uint64_t seed, RankOptions opts = {});

  SuffixTree build(TextSlice slice);
  std::shared_ptr<const SuffixTree> build_shared(TextSlice slice);

  std::uint64_t w_scale() const noexcept { return w_scale_; }
  const BuildStats& stats() const noexcept { return stats_; }
  const NodeTally& nodes() const noexcept { return *tally_; }
  const ScratchPoolSet& pools() const noexcept { return pools_; }

 private:
  std::uint64_t w_scale_;
  std::mt19937_64 rng_;
  ScratchPoolSet pools_;
  RankOptions opts_;
  BuildStats stats_;
  std::shared_ptr<NodeTally> tally_;
};

}  // namespace swindex
