#include "swindex/suffix_tree.hpp"

#include <algorithm>
#include <utility>

#include "swindex/suffix_array.hpp"

namespace swindex {

SuffixTree::~SuffixTree() {
  if (tally_) tally_->live -= static_cast<std::int64_t>(nodes_.size());
}

std::vector<Position> SuffixTree::suffix_array() const {
  std::vector<Position> out(sa_.size());
  for (std::size_t j = 0; j < sa_.size(); ++j) out[j] = leaf_position(j);
  return out;
}

bool SuffixTree::path_symbol(std::uint32_t v, std::uint32_t d, Symbol& out) const noexcept {
  const std::size_t rel = static_cast<std::size_t>(sa_[nodes_[v].lo]) + d;
  if (rel >= text_.size()) return false;
  out = text_[rel];
  return true;
}

Matcher SuffixTree::matcher() const { return Matcher(*this); }

void SuffixTree::report_all(LeafRange r, std::vector<Position>& out) const {
  if (r.empty()) return;
  for (std::uint32_t j = r.lo; j <= r.hi; ++j) out.push_back(leaf_position(j));
}

void SuffixTree::report_ge(LeafRange r, Position theta, std::vector<Position>& out,
                           ReportCounter* counter) const {
  std::vector<LeafRange> stack;
  if (!r.empty()) stack.push_back(r);
  while (!stack.empty()) {
    const LeafRange cur = stack.back();
    stack.pop_back();
    const std::size_t j = argmax(cur);
    if (counter != nullptr) ++counter->probes;
    if (leaf_position(j) < theta) continue;
    out.push_back(leaf_position(j));
    const auto jj = static_cast<std::uint32_t>(j);
    if (jj > cur.lo) stack.push_back({cur.lo, jj - 1});
    if (jj < cur.hi) stack.push_back({jj + 1, cur.hi});
  }
}

void SuffixTree::report_le(LeafRange r, Position theta, std::vector<Position>& out,
                           ReportCounter* counter) const {
  std::vector<LeafRange> stack;
  if (!r.empty()) stack.push_back(r);
  while (!stack.empty()) {
    const LeafRange cur = stack.back();
    stack.pop_back();
    const std::size_t j = argmin(cur);
    if (counter != nullptr) ++counter->probes;
    if (leaf_position(j) > theta) continue;
    out.push_back(leaf_position(j));
    const auto jj = static_cast<std::uint32_t>(j);
    if (jj > cur.lo) stack.push_back({cur.lo, jj - 1});
    if (jj < cur.hi) stack.push_back({jj + 1, cur.hi});
  }
}

std::size_t SuffixTree::memory_bytes() const noexcept {
  return text_.size() * sizeof(Symbol) + nodes_.size() * sizeof(Node) + edges_.memory_bytes() +
         sa_.size() * sizeof(std::int32_t) + rmq_max_.memory_bytes() + rmq_min_.memory_bytes();
}

bool Matcher::step(Symbol c) {
  SWINDEX_CHECK(alive_);
  const SuffixTree& t = *tree_;
  const auto& v = t.nodes_[node_];
  if (len_ == v.depth) {
    const std::uint32_t next = t.edges_.find(node_, c);
    if (next == EdgeMap::kNone) {
      alive_ = false;
      return false;
    }
    node_ = next;
    ++len_;
    return true;
  }
  Symbol expected;
  if (!t.path_symbol(node_, len_, expected) || expected != c) {
    alive_ = false;
    return false;
  }
  ++len_;
  return true;
}

LeafRange Matcher::range() const noexcept {
  if (!alive_) return {};
  return tree_->range(node_);
}

SuffixTree build_suffix_tree(TextSlice slice, std::uint64_t w_scale, std::mt19937_64& rng,
                             ScratchPoolSet& pools, const RankOptions& opts, BuildStats* stats,
                             std::shared_ptr<NodeTally> tally) {
  SWINDEX_CHECK(!slice.symbols.empty());
  SuffixTree tree;
  tree.text_.assign(slice.symbols.begin(), slice.symbols.end());
  tree.abs_start_ = slice.abs_start;
  const std::size_t k = tree.text_.size();

  RankResult ranked = reduce_rank_space(tree.text_, w_scale, rng, pools, opts);
  if (stats != nullptr) {
    ++stats->trees;
    stats->symbols += k;
    stats->hash_attempts += static_cast<std::uint64_t>(ranked.attempts);
    switch (ranked.path) {
      case ReductionPath::kLarge: ++stats->large_path; break;
      case ReductionPath::kSmall: ++stats->small_path; break;
      case ReductionPath::kFallback: ++stats->fallbacks; break;
    }
  }
  std::vector<Rank>& ranks = ranked.reduced;
  ranks.push_back(0);
  const auto sigma = static_cast<Rank>(ranked.reduction.sigma_size());
  tree.sa_ = suffix_array_sais(ranks, sigma);
  const std::vector<std::int32_t> lcp = lcp_kasai(ranks, tree.sa_);
  const auto n = static_cast<std::uint32_t>(tree.sa_.size());

  auto& nodes = tree.nodes_;
  nodes.reserve(2 * static_cast<std::size_t>(n));
  nodes.push_back({SuffixTree::kNoNode, 0, 0, n - 1});
  std::vector<std::uint32_t> stack{SuffixTree::kRoot};
  for (std::uint32_t i = 0; i <= n; ++i) {
    const auto l = static_cast<std::uint32_t>(i < n ? lcp[i] : 0);
    std::uint32_t last = SuffixTree::kNoNode;
    while (nodes[stack.back()].depth > l) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      nodes[v].hi = i - 1;
      if (nodes[stack.back()].depth > l) {
        nodes[v].parent = stack.back();
      } else {
        last = v;
        break;
      }
    }
    if (last != SuffixTree::kNoNode) {
      if (nodes[stack.back()].depth == l) {
        nodes[last].parent = stack.back();
      } else {
        const auto x = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back({stack.back(), l, nodes[last].lo, 0});
        nodes[last].parent = x;
        stack.push_back(x);
      }
    }
    if (i < n) {
      const auto leaf = static_cast<std::uint32_t>(nodes.size());
      const auto len = static_cast<std::uint32_t>(n - static_cast<std::uint32_t>(tree.sa_[i]));
      nodes.push_back({SuffixTree::kNoNode, len, i, i});
      stack.push_back(leaf);
    }
  }
  // Internal nodes pushed above their children get their parent when popped;
  // a node created with stack.back() as parent keeps it.
  nodes[SuffixTree::kRoot].hi = n - 1;

  tree.edges_ = EdgeMap(nodes.size());
  for (std::uint32_t v = 1; v < nodes.size(); ++v) {
    Symbol first;
    if (tree.path_symbol(v, nodes[nodes[v].parent].depth, first)) tree.edges_.insert(nodes[v].parent, first, v);
  }

  tree.rmq_max_ = RangeMax<std::int32_t>(tree.sa_);
  tree.rmq_min_ = RangeMin<std::int32_t>(tree.sa_);

  if (tally) {
    tally->live += static_cast<std::int64_t>(nodes.size());
    tally->peak = std::max(tally->peak, tally->live);
    tree.tally_ = std::move(tally);
  }
  return tree;
}

TreeBuilder::TreeBuilder(std::uint64_t w_scale, std::uint64_t seed, RankOptions opts)
    : w_scale_(w_scale),
      rng_(seed),
      pools_(small_path_range(w_scale)),
      opts_(opts),
      tally_(std::make_shared<NodeTally>()) {}

SuffixTree TreeBuilder::build(TextSlice slice) {
  return build_suffix_tree(slice, w_scale_, rng_, pools_, opts_, &stats_, tally_);
}

std::shared_ptr<const SuffixTree> TreeBuilder::build_shared(TextSlice slice) {
  return std::make_shared<const SuffixTree>(build(slice));
}

}  // namespace swindex
