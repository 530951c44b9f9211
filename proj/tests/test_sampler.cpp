#include <map>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "motzkin/genfun.hpp"
#include "motzkin/sampler.hpp"

namespace motzkin {
namespace {

TEST(Count, SmallValues) {
  EXPECT_EQ(motzkin_count(1), 1);
  EXPECT_EQ(motzkin_count(2), 1);
  EXPECT_EQ(motzkin_count(6), 21);
  EXPECT_THROW(CountTable(0), usage_error);
  EXPECT_THROW(CountTable(5).count(6), usage_error);
}

TEST(Count, AgreesWithSeriesTo200) {
  CountTable table(200);
  Series m = motzkin_series(200);
  for (std::size_t n = 1; n <= 200; ++n) ASSERT_EQ(Rational(table.count(n)), m[n]) << "n=" << n;
}

TEST(Unrank, SizeOneIsTheLeaf) { EXPECT_TRUE(unrank(1, Integer(0)).is_leaf()); }

TEST(Unrank, MatchesEnumerationOrder) {
  for (std::size_t n = 1; n <= 9; ++n) {
    auto all = enumerate(n);
    CountTable table(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      ASSERT_EQ(unrank(table, n, Integer(static_cast<unsigned long>(i))), all[i]) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Unrank, InjectiveAndRankRoundtrips) {
  CountTable table(10);
  for (std::size_t n = 1; n <= 10; ++n) {
    std::set<std::string> seen;
    const unsigned long total = table.count(n).get_ui();
    for (unsigned long i = 0; i < total; ++i) {
      TreeNode t = unrank(table, n, Integer(i));
      ASSERT_EQ(t.size(), n);
      ASSERT_TRUE(seen.insert(t.to_string()).second);
      ASSERT_EQ(rank(table, t), i);
    }
  }
}

TEST(Unrank, OutOfRangeIsUsageError) {
  EXPECT_THROW(unrank(4, Integer(4)), usage_error);
  EXPECT_THROW(unrank(4, Integer(-1)), usage_error);
}

TEST(Unrank, LargeSizeRoundtrip) {
  CountTable table(400);
  Engine rng(3);
  for (int i = 0; i < 50; ++i) {
    Integer idx = uniform_below(rng, table.count(400));
    TreeNode t = unrank(table, 400, idx);
    ASSERT_EQ(t.size(), 400u);
    ASSERT_EQ(rank(table, t), idx);
  }
}

TEST(Uniform, BelowBoundAndCoversRange) {
  Engine rng(9);
  std::set<unsigned long> seen;
  for (int i = 0; i < 2000; ++i) {
    Integer v = uniform_below(rng, Integer(7));
    ASSERT_GE(v, 0);
    ASSERT_LT(v, 7);
    seen.insert(v.get_ui());
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(uniform_below(rng, Integer(1)), 0);
  EXPECT_THROW(uniform_below(rng, Integer(0)), usage_error);
}

TEST(Sample, Deterministic) {
  auto a = sample_uniform(12, 42, 5000);
  auto b = sample_uniform(12, 42, 5000);
  ASSERT_EQ(a.size(), 5000u);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
  auto c = sample_uniform(12, 43, 5000);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == c[i];
  EXPECT_LT(same, a.size());
}

TEST(Sample, SizeOneIsAlwaysTheLeaf) {
  for (const TreeNode& t : sample_uniform(1, 5, 100)) ASSERT_TRUE(t.is_leaf());
}

TEST(Sample, ChiSquareOverSizeFour) {
  // Four trees of size 4, 3 degrees of freedom; 16.266 is the 0.1% point.
  const std::size_t draws = 10000;
  std::map<std::string, std::size_t> freq;
  for (const TreeNode& t : sample_uniform(4, 2024, draws)) ++freq[t.to_string()];
  ASSERT_EQ(freq.size(), 4u);
  const double expected = draws / 4.0;
  double chi2 = 0;
  for (const auto& [tree, count] : freq) chi2 += (count - expected) * (count - expected) / expected;
  EXPECT_LT(chi2, 16.266);
}

TEST(MonteCarlo, SizeOneBalancedIsCertain) {
  auto r = monte_carlo_estimate(1, Statistic::parse("balanced"), 1000, 1);
  EXPECT_EQ(r.hits, 1000u);
  EXPECT_DOUBLE_EQ(r.estimate, 1.0);
  EXPECT_DOUBLE_EQ(r.standard_error, 0.0);
}

TEST(MonteCarlo, WithinThreeStandardErrorsOfExact) {
  const std::size_t n = 50;
  const Rational total = motzkin_series(n)[n] * static_cast<unsigned long>(n);
  const double leaf = Rational(leaves_series(n)[n] / total).get_d();
  const double prot = Rational(protected_series(1, n)[n] / total).get_d();
  auto rl = monte_carlo_estimate(n, Statistic::parse("leaf"), 40000, 17);
  auto rp = monte_carlo_estimate(n, Statistic::parse("protected:1"), 40000, 18);
  EXPECT_NEAR(rl.estimate, leaf, 3 * rl.standard_error);
  EXPECT_NEAR(rp.estimate, prot, 3 * rp.standard_error);
  EXPECT_NEAR(rl.estimate + rp.estimate, 1.0, 0.02);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  auto stat = Statistic::parse("balanced-rank:1");
  auto one = monte_carlo_estimate(30, stat, 20000, 99, 1);
  auto three = monte_carlo_estimate(30, stat, 20000, 99, 3);
  auto eight = monte_carlo_estimate(30, stat, 20000, 99, 8);
  EXPECT_EQ(one.hits, three.hits);
  EXPECT_EQ(one.hits, eight.hits);
}

TEST(MonteCarlo, MoreSamplesStayConsistent) {
  auto stat = Statistic::parse("protected:2");
  auto small = monte_carlo_estimate(40, stat, 10000, 7);
  auto large = monte_carlo_estimate(40, stat, 30000, 8);
  EXPECT_LT(large.standard_error, small.standard_error);
  EXPECT_NEAR(small.estimate, large.estimate, 3 * (small.standard_error + large.standard_error));
}

TEST(Statistic, ParseAndName) {
  for (const char* s : {"leaf", "balanced", "protected:3", "balanced-rank:0"}) {
    EXPECT_EQ(Statistic::parse(s).name(), s);
  }
  EXPECT_EQ(Statistic::parse("protected:12").k, 12u);
  for (const char* bad : {"", "leaves", "protected:", "protected:x", "balanced-rank:-1", "protected:1234567"}) {
    EXPECT_THROW(Statistic::parse(bad), usage_error) << bad;
  }
}

TEST(Statistic, Matches) {
  VertexStats leaf{0, 0, true};
  VertexStats uneven{1, 2, false};
  EXPECT_TRUE(Statistic::parse("leaf").matches(leaf));
  EXPECT_FALSE(Statistic::parse("leaf").matches(uneven));
  EXPECT_TRUE(Statistic::parse("protected:1").matches(uneven));
  EXPECT_FALSE(Statistic::parse("protected:2").matches(uneven));
  EXPECT_FALSE(Statistic::parse("balanced").matches(uneven));
  EXPECT_TRUE(Statistic::parse("balanced-rank:0").matches(leaf));
}

TEST(AggregateParallel, EqualsSequential) {
  for (std::size_t n : {1u, 2u, 7u, 11u}) {
    auto seq = aggregate(n, 5);
    for (std::size_t w : {1u, 3u, 8u}) {
      auto par = aggregate_parallel(n, 5, w);
      ASSERT_EQ(par.trees, seq.trees);
      ASSERT_EQ(par.leaves_total, seq.leaves_total);
      ASSERT_EQ(par.protected_total, seq.protected_total);
      ASSERT_EQ(par.balanced_rank_total, seq.balanced_rank_total);
      ASSERT_EQ(par.balanced_total, seq.balanced_total);
      ASSERT_EQ(par.balanced_root_trees, seq.balanced_root_trees);
      ASSERT_EQ(par.eb, seq.eb);
    }
  }
}

}  // namespace
}  // namespace motzkin
