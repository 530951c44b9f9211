#include <string>

#include <gtest/gtest.h>

#include "motzkin/cli.hpp"

namespace motzkin::cli {
namespace {

TEST(Table, RowsAndDigits) {
  OutputRecord r = cmd_table(6, 8);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0][1], "0.66666667");
  EXPECT_EQ(r.rows[0][2], "2/3");
  EXPECT_EQ(r.rows[5][1], "0.00799206");
  EXPECT_EQ(r.results["rows"][1]["probability"]["exact"], "10/27");
  EXPECT_THROW(cmd_table(0, 8), usage_error);
  EXPECT_THROW(cmd_table(21, 8), usage_error);
}

TEST(Coeffs, Examples) {
  OutputRecord m = cmd_coeffs("motzkin", 1, 6);
  ASSERT_EQ(m.rows.size(), 6u);
  EXPECT_EQ(m.rows[5][1], "21");
  EXPECT_EQ(cmd_coeffs("leaves", 4, 4).rows[0][1], "7");
  EXPECT_EQ(cmd_coeffs("protected:1", 4, 4).rows[0][1], "9");
  EXPECT_EQ(cmd_coeffs("balanced", 2, 4).rows[2][1], "14");
  EXPECT_EQ(cmd_coeffs("eb", 4, 4).rows[0][1], "11");
  EXPECT_EQ(cmd_coeffs("balanced-rank:1", 4, 4).rows[0][1], "4");
  EXPECT_EQ(cmd_coeffs("protected-root:1", 3, 3).rows[0][1], "2");
  EXPECT_EQ(cmd_coeffs("motzkin", 0, 0).rows[0][1], "0");
}

TEST(Coeffs, BadInput) {
  try {
    cmd_coeffs("nonsense", 1, 3);
    FAIL() << "expected usage_error";
  } catch (const usage_error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("nonsense"), std::string::npos);
    EXPECT_NE(msg.find("protected:K"), std::string::npos);
  }
  EXPECT_THROW(cmd_coeffs("protected:", 1, 3), usage_error);
  EXPECT_THROW(cmd_coeffs("motzkin", 5, 3), usage_error);
  EXPECT_THROW(cmd_coeffs("motzkin", 1, 5000), usage_error);
}

TEST(Verify, SmallSizesPass) {
  OutputRecord r = cmd_verify(3, 2);
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_TRUE(r.results["all_passed"].get<bool>());
  EXPECT_EQ(r.results["sizes"][2]["trees"], 2);
  EXPECT_EQ(r.notes.back(), "all checks passed");
}

TEST(Verify, GuardsSize) {
  EXPECT_THROW(cmd_verify(20, 4), usage_error);
  EXPECT_THROW(cmd_verify(0, 4), usage_error);
}

TEST(Bounds, CutoffZeroAndNesting) {
  OutputRecord z = cmd_bounds(0, 6);
  EXPECT_EQ(z.results["interval"]["lower"]["exact"], "1/2");
  EXPECT_EQ(z.results["interval"]["upper"]["exact"], "1/1");
  EXPECT_EQ(z.rows[0][0], "0.500000");
  auto outer = balanced_probability_bounds(5);
  auto inner = balanced_probability_bounds(10);
  EXPECT_TRUE(outer.contains(inner));
  EXPECT_THROW(cmd_bounds(max_cutoff + 1, 6), usage_error);
}

TEST(Bounds, LargeCutoffRoundsOutward) {
  OutputRecord r = cmd_bounds(1000, 30);
  EXPECT_FALSE(r.results["interval"]["exact"].get<bool>());
  EXPECT_EQ(r.rows[0][0].substr(0, 19), "0.56836225976272777");
}

TEST(ExpectedRank, CsvHeader) {
  std::string csv = render(cmd_expected_rank(20, 18), Format::csv);
  EXPECT_EQ(csv.substr(0, 13), "lower,upper\r\n");
  EXPECT_NE(csv.find("0.646484730196694727"), std::string::npos);
  EXPECT_THROW(cmd_expected_rank(0, 18), usage_error);
}

TEST(Sample, DeterministicWithReference) {
  OutputRecord a = cmd_sample(20, "leaf", 5000, 11, 1);
  OutputRecord b = cmd_sample(20, "leaf", 5000, 11, 4);
  EXPECT_EQ(render(a, Format::json), render(b, Format::json));
  EXPECT_TRUE(a.results.contains("exact"));
  EXPECT_FALSE(cmd_sample(400, "leaf", 10, 11).results.contains("exact"));
  EXPECT_THROW(cmd_sample(20, "weird", 10, 1), usage_error);
}

TEST(Sample, ExactFractionMatchesEnumeration) {
  auto agg = aggregate(8, 3);
  Rational denom(static_cast<unsigned long>(agg.trees * 8));
  EXPECT_EQ(exact_statistic_fraction(Statistic::parse("leaf"), 8), Rational(static_cast<unsigned long>(agg.leaves_total)) / denom);
  EXPECT_EQ(exact_statistic_fraction(Statistic::parse("balanced-rank:2"), 8),
            Rational(static_cast<unsigned long>(agg.balanced_rank(2))) / denom);
}

TEST(Render, CsvQuoting) {
  OutputRecord r;
  r.columns = {"a", "b"};
  r.rows = {{"x,y", "say \"hi\""}};
  EXPECT_EQ(render(r, Format::csv), "a,b\r\n\"x,y\",\"say \"\"hi\"\"\"\r\n");
}

TEST(Render, JsonEnvelope) {
  json doc = json::parse(render(cmd_table(2, 4), Format::json));
  EXPECT_EQ(doc["schema"], schema_id);
  EXPECT_EQ(doc["artifact_version"], artifact_version);
  EXPECT_EQ(doc["command"], "table");
  EXPECT_EQ(doc["parameters"]["max_k"], 2);
}

TEST(Render, TextAligned) {
  std::string text = render(cmd_table(2, 4), Format::text);
  EXPECT_EQ(text.substr(0, text.find('\n')), "k  probability  exact");
}

TEST(Format, Parse) {
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_THROW(parse_format("xml"), usage_error);
}

}  // namespace
}  // namespace motzkin::cli
