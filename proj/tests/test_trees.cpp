#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "motzkin/genfun.hpp"
#include "motzkin/trees.hpp"

namespace motzkin {
namespace {

const TreeNode leaf = TreeNode::leaf();

TreeNode path(std::size_t n) {
  TreeNode t = leaf;
  for (std::size_t i = 1; i < n; ++i) t = TreeNode::unary(t);
  return t;
}

// Straight recursive reading of the definitions, for comparison with the
// iterative implementation.
struct RecursiveStats {
  std::size_t rank;
  std::size_t max_depth;
};

RecursiveStats recursive_root_stats(const TreeNode& t) {
  if (t.is_leaf()) return {0, 0};
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  for (const TreeNode& c : t.children()) {
    RecursiveStats s = recursive_root_stats(c);
    lo = std::min(lo, s.rank);
    hi = std::max(hi, s.max_depth);
  }
  return {lo + 1, hi + 1};
}

void collect_preorder(const TreeNode& t, std::vector<RecursiveStats>& out) {
  out.push_back(recursive_root_stats(t));
  for (const TreeNode& c : t.children()) collect_preorder(c, out);
}

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate(1).size(), 1u);
  EXPECT_TRUE(enumerate(1).front().is_leaf());
  EXPECT_EQ(enumerate(4).size(), 4u);
  EXPECT_EQ(enumerate(6).size(), 21u);
  EXPECT_THROW(enumerate(0), usage_error);
}

TEST(Enumerate, CanonicalOrderAtSizeFour) {
  std::vector<std::string> got;
  for (const TreeNode& t : enumerate(4)) got.push_back(t.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"[[[[]]]]", "[[[][]]]", "[[][[]]]", "[[[]][]]"}));
}

TEST(Enumerate, CountsMatchMotzkinSeries) {
  Series m = motzkin_series(14);
  TreeEnumerator e;
  for (std::size_t n = 1; n <= 14; ++n) {
    ASSERT_EQ(Rational(static_cast<unsigned long>(e.trees(n).size())), m[n]) << "n=" << n;
  }
}

TEST(Enumerate, TreesAreDistinctAndWellFormed) {
  for (std::size_t n = 1; n <= 10; ++n) {
    std::set<std::string> seen;
    for (const TreeNode& t : enumerate(n)) {
      ASSERT_EQ(t.size(), n);
      ASSERT_TRUE(seen.insert(t.to_string()).second);
    }
  }
}

TEST(VertexStats, Leaf) {
  auto s = vertex_stats(leaf);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (VertexStats{0, 0, true}));
}

TEST(VertexStats, PathOfThree) {
  auto s = vertex_stats(path(3));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (VertexStats{2, 2, true}));
  EXPECT_EQ(s[1].rank, 1u);
  EXPECT_EQ(s[2].rank, 0u);
}

TEST(VertexStats, UnevenRootIsNotBalanced) {
  TreeNode t = TreeNode::binary(leaf, TreeNode::unary(leaf));
  auto s = vertex_stats(t);
  EXPECT_EQ(s[0].rank, 1u);
  EXPECT_EQ(s[0].max_depth, 2u);
  EXPECT_FALSE(s[0].balanced);
}

TEST(VertexStats, LongPathDoesNotRecurse) {
  auto s = vertex_stats(path(20000));
  EXPECT_EQ(s.front().rank, 19999u);
  EXPECT_TRUE(s.front().balanced);
}

TEST(VertexStats, MatchesRecursiveDefinition) {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const TreeNode& t : enumerate(n)) {
      std::vector<RecursiveStats> expected;
      collect_preorder(t, expected);
      auto got = vertex_stats(t);
      ASSERT_EQ(got.size(), expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        ASSERT_EQ(got[i].rank, expected[i].rank);
        ASSERT_EQ(got[i].max_depth, expected[i].max_depth);
        ASSERT_EQ(got[i].balanced, expected[i].rank == expected[i].max_depth);
        ASSERT_LE(got[i].rank, got[i].max_depth);
      }
    }
  }
}

TEST(Aggregate, SizeTwo) {
  auto a = aggregate(2);
  EXPECT_EQ(a.trees, 1u);
  EXPECT_EQ(a.leaves_total, 1u);
  EXPECT_EQ(a.protected_total[1], 1u);
  EXPECT_EQ(a.balanced_total, 2u);
  EXPECT_EQ(a.balanced_root_trees, 1u);
}

TEST(Aggregate, SizeThree) {
  auto a = aggregate(3);
  EXPECT_EQ(a.trees, 2u);
  EXPECT_EQ(a.leaves_total, 3u);
  EXPECT_EQ(a.protected_total[1], 3u);
  EXPECT_EQ(a.balanced_total, 6u);
  EXPECT_EQ(a.eb, 4u);  // path: 2+1+0, cherry: 1+0+0
}

TEST(Aggregate, SizeFour) {
  auto a = aggregate(4);
  EXPECT_EQ(a.trees, 4u);
  EXPECT_EQ(a.balanced_total, 14u);  // 4 + 4 + 3 + 3
  EXPECT_EQ(a.balanced_root_trees, 2u);
  // path 0+1+2+3, path over cherry 2+1, and 1 for each of the two uneven trees.
  EXPECT_EQ(a.eb, 11u);
  EXPECT_EQ(a.protected_total[1], 9u);  // 16 vertices minus 7 leaves
}

TEST(Aggregate, Invariants) {
  for (std::size_t n = 1; n <= 11; ++n) {
    auto a = aggregate(n, 6);
    ASSERT_EQ(a.protected_total[0], n * a.trees);
    for (std::size_t k = 0; k + 1 < a.protected_total.size(); ++k) {
      ASSERT_LE(a.protected_total[k + 1], a.protected_total[k]);
    }
    std::uint64_t sum = 0;
    for (const auto& [k, c] : a.balanced_rank_total) sum += c;
    ASSERT_EQ(sum, a.balanced_total);
    ASSERT_EQ(a.leaves_total, a.balanced_rank(0));
    // A k-protected vertex needs at least k+1 vertices beneath and including it.
    for (std::size_t k = n; k < a.protected_total.size(); ++k) ASSERT_EQ(a.protected_total[k], 0u);
  }
}

}  // namespace
}  // namespace motzkin
