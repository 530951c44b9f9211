#pragma once

// Brute-force ground truth: every Motzkin tree of a given size, and exact
// per-vertex rank / balance statistics.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace motzkin {

/// Immutable rooted plane tree with 0, 1 or 2 ordered children per vertex.
/// Copies share structure, so enumerated trees reuse their subtrees.
class TreeNode {
 public:
  /// A single leaf.
  TreeNode() = default;

  static TreeNode leaf() { return {}; }

  static TreeNode unary(TreeNode child) {
    std::size_t size = child.size() + 1;
    return TreeNode(std::make_shared<const Node>(Node{{std::move(child)}, size}));
  }

  static TreeNode binary(TreeNode left, TreeNode right) {
    std::size_t size = left.size() + right.size() + 1;
    return TreeNode(std::make_shared<const Node>(Node{{std::move(left), std::move(right)}, size}));
  }

  std::size_t arity() const noexcept { return node_ ? node_->children.size() : 0; }
  bool is_leaf() const noexcept { return arity() == 0; }
  std::size_t size() const noexcept { return node_ ? node_->size : 1; }

  std::span<const TreeNode> children() const noexcept {
    if (!node_) return {};
    return node_->children;
  }
  const TreeNode& child(std::size_t i) const { return node_->children.at(i); }

  /// Bracket notation: a vertex is "[" followed by its children and "]".
  /// The leaf is "[]", the cherry "[[][]]".
  std::string to_string() const {
    std::string out = "[";
    for (const TreeNode& c : children()) out += c.to_string();
    out += ']';
    return out;
  }

  friend bool operator==(const TreeNode& a, const TreeNode& b) {
    if (a.node_ == b.node_) return true;
    if (a.arity() != b.arity() || a.size() != b.size()) return false;
    return std::equal(a.children().begin(), a.children().end(), b.children().begin());
  }

 private:
  struct Node {
    std::vector<TreeNode> children;
    std::size_t size;
  };

  explicit TreeNode(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Canonical order: arity 0, then arity 1 (child in canonical order), then
/// arity 2 by ascending left size, then left index, then right index.
class TreeEnumerator {
 public:
  const std::vector<TreeNode>& trees(std::size_t n) {
    if (n == 0) throw usage_error("enumerate: tree size must be at least 1");
    while (by_size_.size() <= n) extend();
    return by_size_[n];
  }

 private:
  void extend() {
    const std::size_t n = by_size_.size();
    std::vector<TreeNode> level;
    if (n == 0) {
      by_size_.emplace_back();
      return;
    }
    if (n == 1) {
      level.push_back(TreeNode::leaf());
    } else {
      for (const TreeNode& c : by_size_[n - 1]) level.push_back(TreeNode::unary(c));
      for (std::size_t left = 1; left + 2 <= n; ++left) {
        const std::size_t right = n - 1 - left;
        for (const TreeNode& l : by_size_[left]) {
          for (const TreeNode& r : by_size_[right]) level.push_back(TreeNode::binary(l, r));
        }
      }
    }
    by_size_.push_back(std::move(level));
  }

  std::vector<std::vector<TreeNode>> by_size_;
};

/// Every Motzkin tree with exactly n vertices, in canonical order.
inline std::vector<TreeNode> enumerate(std::size_t n) {
  TreeEnumerator e;
  return e.trees(n);
}

/// Streams the trees of size n without holding the caller to a container.
inline void for_each_tree(std::size_t n, const std::function<void(const TreeNode&)>& visit) {
  TreeEnumerator e;
  for (const TreeNode& t : e.trees(n)) visit(t);
}

struct VertexStats {
  std::size_t rank = 0;       // shortest descending path to a leaf
  std::size_t max_depth = 0;  // longest descending path to a leaf
  bool balanced = true;

  bool is_protected(std::size_t k) const noexcept { return rank >= k; }
  friend bool operator==(const VertexStats&, const VertexStats&) = default;
};

/// Stats for every vertex, indexed in pre-order (root first). Iterative, so
/// long paths do not exhaust the call stack.
inline std::vector<VertexStats> vertex_stats(const TreeNode& tree) {
  std::vector<const TreeNode*> order;
  order.reserve(tree.size());
  std::vector<std::vector<std::size_t>> kids(tree.size());

  std::vector<std::pair<const TreeNode*, std::size_t>> stack{{&tree, SIZE_MAX}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    std::size_t id = order.size();
    order.push_back(node);
    if (parent != SIZE_MAX) kids[parent].push_back(id);
    auto ch = node->children();
    for (std::size_t i = ch.size(); i-- > 0;) stack.emplace_back(&ch[i], id);
  }

  std::vector<VertexStats> stats(order.size());
  for (std::size_t id = order.size(); id-- > 0;) {
    if (kids[id].empty()) continue;  // leaf defaults
    std::size_t lo = SIZE_MAX;
    std::size_t hi = 0;
    for (std::size_t c : kids[id]) {
      lo = std::min(lo, stats[c].rank);
      hi = std::max(hi, stats[c].max_depth);
    }
    stats[id].rank = lo + 1;
    stats[id].max_depth = hi + 1;
    stats[id].balanced = stats[id].rank == stats[id].max_depth;
  }
  return stats;
}

/// Totals over all trees of one size.
struct AggregateCounts {
  std::size_t n = 0;
  std::size_t k_max = 0;
  std::uint64_t trees = 0;
  std::uint64_t leaves_total = 0;
  std::vector<std::uint64_t> protected_total;               // index k = 0..k_max
  std::map<std::size_t, std::uint64_t> balanced_rank_total;  // every rank that occurs
  std::uint64_t balanced_total = 0;
  std::uint64_t balanced_root_trees = 0;
  std::uint64_t eb = 0;  // sum of rank over balanced vertices

  std::uint64_t balanced_rank(std::size_t k) const {
    auto it = balanced_rank_total.find(k);
    return it == balanced_rank_total.end() ? 0 : it->second;
  }

  void tally(const TreeNode& tree) {
    ++trees;
    const auto stats = vertex_stats(tree);
    if (stats.front().balanced) ++balanced_root_trees;
    for (const VertexStats& v : stats) {
      if (v.rank == 0) ++leaves_total;
      for (std::size_t k = 0; k <= std::min(v.rank, k_max); ++k) ++protected_total[k];
      if (v.balanced) {
        ++balanced_total;
        ++balanced_rank_total[v.rank];
        eb += v.rank;
      }
    }
  }

  void merge(const AggregateCounts& other) {
    trees += other.trees;
    leaves_total += other.leaves_total;
    for (std::size_t k = 0; k < protected_total.size(); ++k) protected_total[k] += other.protected_total[k];
    for (const auto& [k, c] : other.balanced_rank_total) balanced_rank_total[k] += c;
    balanced_total += other.balanced_total;
    balanced_root_trees += other.balanced_root_trees;
    eb += other.eb;
  }

  static AggregateCounts empty(std::size_t n, std::size_t k_max) {
    AggregateCounts a;
    a.n = n;
    a.k_max = k_max;
    a.protected_total.assign(k_max + 1, 0);
    return a;
  }
};

inline constexpr std::size_t default_k_max = 8;

inline AggregateCounts aggregate(std::size_t n, std::size_t k_max = default_k_max) {
  if (n == 0) throw usage_error("aggregate: tree size must be at least 1");
  AggregateCounts out = AggregateCounts::empty(n, k_max);
  for_each_tree(n, [&](const TreeNode& t) { out.tally(t); });
  return out;
}

}  // namespace motzkin
