#pragma once

// Command implementations behind the `motzkin` tool. Each command returns an
// OutputRecord that renders to text, JSON or CSV; argument parsing lives in
// tools/motzkin.cpp.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asymptotics.hpp"
#include "genfun.hpp"
#include "rational.hpp"
#include "sampler.hpp"
#include "trees.hpp"

namespace motzkin::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* artifact_version = "1.0.0";
inline constexpr const char* schema_id = "motzkin-output/1";

enum class Format { text, json, csv };

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_usage = 2, exit_verification_failed = 3 };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw usage_error("unknown format '" + s + "' (expected text, json or csv)");
}

struct OutputRecord {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // text format only
  int exit_code = exit_ok;
};

inline const char* rounding_name(Rounding mode) {
  switch (mode) {
    case Rounding::down: return "down";
    case Rounding::up: return "up";
    case Rounding::half_even: return "half-even";
  }
  return "";
}

inline json rational_json(const Rational& q, std::size_t digits, Rounding mode) {
  return json{{"exact", to_exact_string(q)},
              {"decimal", to_decimal(q, digits, mode)},
              {"digits", digits},
              {"rounding", rounding_name(mode)}};
}

inline json interval_json(const BoundInterval& b, std::size_t digits) {
  return json{{"lower", rational_json(b.lower, digits, Rounding::down)},
              {"upper", rational_json(b.upper, digits, Rounding::up)},
              {"cutoff", b.cutoff},
              {"precision_bits", b.precision_bits},
              {"exact", b.exact}};
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string render(const OutputRecord& r, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json: {
      json doc{{"schema", schema_id},
               {"artifact_version", artifact_version},
               {"command", r.command},
               {"parameters", r.parameters},
               {"results", r.results}};
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << detail::csv_field(r.columns[i]);
      os << "\r\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(row[i]);
        os << "\r\n";
      }
      break;
    }
    case Format::text: {
      std::vector<std::size_t> width(r.columns.size());
      for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          os << cells[i];
          if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        os << '\n';
      };
      line(r.columns);
      for (const auto& row : r.rows) line(row);
      for (const auto& n : r.notes) os << n << '\n';
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands

inline OutputRecord cmd_table(std::size_t max_k, std::size_t digits) {
  if (max_k < 1) throw usage_error("table: --max-k must be at least 1");
  if (max_k > 20) throw usage_error("table: --max-k above 20 makes the exact denominators impractically large");
  OutputRecord r;
  r.command = "table";
  r.parameters = json{{"max_k", max_k}, {"digits", digits}};
  r.columns = {"k", "probability", "exact"};
  auto seq = protected_probability_sequence(max_k);
  json rows = json::array();
  for (std::size_t k = 1; k <= max_k; ++k) {
    json p = rational_json(seq[k], digits, Rounding::half_even);
    rows.push_back(json{{"k", k}, {"probability", p}});
    r.rows.push_back({std::to_string(k), p["decimal"].get<std::string>(), p["exact"].get<std::string>()});
  }
  r.results = json{{"rows", rows}};
  return r;
}

inline const char* coefficient_selectors = "motzkin, leaves, protected:K, protected-root:K, balanced-rank:K, balanced, eb";

/// Series for a coefficient selector, truncated at `order`.
inline Series selected_series(const std::string& selector, std::size_t order) {
  auto level = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (selector.rfind(prefix, 0) != 0) return std::nullopt;
    std::string digits = selector.substr(prefix.size());
    if (digits.empty() || digits.size() > 4 ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw usage_error("bad level in selector '" + selector + "'");
    }
    return static_cast<std::size_t>(std::stoul(digits));
  };
  if (selector == "motzkin") return motzkin_series(order);
  if (selector == "leaves") return leaves_series(order);
  if (selector == "balanced") return balanced_total_series(order);
  if (selector == "eb") return eb_series(order);
  if (auto k = level("protected:")) return protected_series(*k, order);
  if (auto k = level("protected-root:")) return protected_root_series(*k, order);
  if (auto k = level("balanced-rank:")) return balanced_series(*k, order);
  throw usage_error("unknown selector '" + selector + "'; valid selectors: " + coefficient_selectors);
}

inline constexpr std::size_t max_coefficient_order = 2000;

inline OutputRecord cmd_coeffs(const std::string& selector, std::size_t n_from, std::size_t n_to) {
  if (n_from > n_to) throw usage_error("coeffs: empty range");
  if (n_to > max_coefficient_order) {
    throw usage_error("coeffs: upper end of range above " + std::to_string(max_coefficient_order));
  }
  Series s = selected_series(selector, std::max<std::size_t>(n_to, 1));
  OutputRecord r;
  r.command = "coeffs";
  r.parameters = json{{"selector", selector}, {"from", n_from}, {"to", n_to}};
  r.columns = {"n", "coefficient"};
  json coeffs = json::array();
  for (std::size_t n = n_from; n <= n_to; ++n) {
    if (s[n].get_den() != 1) throw internal_error("coeffs: non-integer coefficient at n=" + std::to_string(n));
    std::string value = s[n].get_num().get_str();
    coeffs.push_back(json{{"n", n}, {"value", value}});
    r.rows.push_back({std::to_string(n), value});
  }
  r.results = json{{"selector", selector}, {"coefficients", coeffs}};
  return r;
}

inline constexpr std::size_t max_verify_n = 14;

/// Brute-force enumeration against generating-function coefficients.
inline OutputRecord cmd_verify(std::size_t max_n, std::size_t max_k) {
  if (max_n < 1) throw usage_error("verify: --max-n must be at least 1");
  if (max_n > max_verify_n) {
    throw usage_error("verify: --max-n above " + std::to_string(max_verify_n) +
                      " is too many trees to enumerate; use `sample` for larger sizes");
  }
  const std::size_t order = max_n;
  const Series trees = motzkin_series(order);
  const Series leaves = leaves_series(order);
  const Series balanced = balanced_total_series(order);
  const Series roots = balanced_root_series(order);
  const Series eb = eb_series(order);
  const Series inv_root = inv_sqrt_delta(order);
  const auto levels = balanced_root_levels(order);
  std::vector<Series> protected_k;
  std::vector<Series> balanced_k;
  for (std::size_t k = 0; k <= max_k; ++k) {
    protected_k.push_back(protected_series(k, order));
    balanced_k.push_back(k < levels.size() ? levels[k] * inv_root : Series(order));
  }

  OutputRecord r;
  r.command = "verify";
  r.parameters = json{{"max_n", max_n}, {"max_k", max_k}};
  r.columns = {"n", "statistic", "oracle", "series", "status"};
  json checks = json::array();
  json sizes = json::array();
  bool all_passed = true;
  std::size_t failures = 0;

  auto check = [&](std::size_t n, const std::string& name, std::uint64_t oracle, const Rational& coefficient) {
    bool pass = coefficient == Rational(static_cast<unsigned long>(oracle));
    all_passed = all_passed && pass;
    if (!pass) ++failures;
    std::string series_value = coefficient.get_str();
    checks.push_back(json{{"n", n}, {"statistic", name}, {"oracle", std::to_string(oracle)},
                          {"series", series_value}, {"pass", pass}});
    r.rows.push_back({std::to_string(n), name, std::to_string(oracle), series_value, pass ? "pass" : "FAIL"});
  };

  for (std::size_t n = 1; n <= max_n; ++n) {
    AggregateCounts agg = aggregate(n, max_k);
    sizes.push_back(json{{"n", n}, {"trees", agg.trees}});
    check(n, "trees", agg.trees, trees[n]);
    check(n, "leaves", agg.leaves_total, leaves[n]);
    for (std::size_t k = 0; k <= max_k; ++k) {
      check(n, "protected:" + std::to_string(k), agg.protected_total[k], protected_k[k][n]);
    }
    for (std::size_t k = 0; k <= max_k; ++k) {
      check(n, "balanced-rank:" + std::to_string(k), agg.balanced_rank(k), balanced_k[k][n]);
    }
    check(n, "balanced", agg.balanced_total, balanced[n]);
    check(n, "balanced-root", agg.balanced_root_trees, roots[n]);
    check(n, "eb", agg.eb, eb[n]);
  }

  r.results = json{{"all_passed", all_passed}, {"failures", failures}, {"sizes", sizes}, {"checks", checks}};
  r.notes.push_back(all_passed ? "all checks passed" : std::to_string(failures) + " check(s) FAILED");
  r.exit_code = all_passed ? exit_ok : exit_verification_failed;
  return r;
}

namespace detail {

inline OutputRecord interval_record(const std::string& command, const BoundInterval& b, std::size_t digits) {
  OutputRecord r;
  r.command = command;
  r.parameters = json{{"cutoff", b.cutoff}, {"digits", digits}};
  json interval = interval_json(b, digits);
  r.results = json{{"interval", interval}};
  r.columns = {"lower", "upper"};
  r.rows.push_back({interval["lower"]["decimal"].get<std::string>(), interval["upper"]["decimal"].get<std::string>()});
  r.notes.push_back("width " + to_decimal(b.width(), digits + 4, Rounding::up) + (b.exact ? " (exact endpoints)" : " (endpoints rounded outward)"));
  return r;
}

}  // namespace detail

inline constexpr std::size_t max_cutoff = 5000;

inline OutputRecord cmd_bounds(std::size_t cutoff, std::size_t digits) {
  if (cutoff > max_cutoff) throw usage_error("bounds: --cutoff above " + std::to_string(max_cutoff));
  return detail::interval_record("bounds", balanced_probability_bounds(cutoff), digits);
}

inline OutputRecord cmd_expected_rank(std::size_t cutoff, std::size_t digits) {
  if (cutoff < 1) throw usage_error("expected-rank: --cutoff must be at least 1");
  if (cutoff > max_cutoff) throw usage_error("expected-rank: --cutoff above " + std::to_string(max_cutoff));
  return detail::interval_record("expected-rank", expected_rank_bounds(cutoff), digits);
}

/// Exact vertex fraction for a statistic at size n, from the generating functions.
inline Rational exact_statistic_fraction(const Statistic& s, std::size_t n) {
  Series numerator(n);
  switch (s.kind) {
    case StatisticKind::leaf: numerator = leaves_series(n); break;
    case StatisticKind::protected_k: numerator = protected_series(s.k, n); break;
    case StatisticKind::balanced: numerator = balanced_total_series(n); break;
    case StatisticKind::balanced_rank: numerator = balanced_series(s.k, n); break;
  }
  return numerator[n] / (motzkin_series(n)[n] * static_cast<unsigned long>(n));
}

inline constexpr std::size_t max_reference_n = 300;

inline OutputRecord cmd_sample(std::size_t n, const std::string& statistic, std::size_t samples, std::uint64_t seed,
                               std::size_t workers = default_workers()) {
  Statistic stat = Statistic::parse(statistic);
  SampleReport rep = monte_carlo_estimate(n, stat, samples, seed, workers);
  OutputRecord r;
  r.command = "sample";
  r.parameters = json{{"n", n}, {"statistic", stat.name()}, {"samples", samples}, {"seed", seed}};
  std::ostringstream est;
  est.precision(17);
  est << rep.estimate;
  std::ostringstream se;
  se.precision(17);
  se << rep.standard_error;
  json results{{"n", n},       {"statistic", stat.name()},        {"samples", samples},
               {"hits", rep.hits}, {"estimate", rep.estimate}, {"standard_error", rep.standard_error},
               {"seed", seed}};
  r.columns = {"n", "statistic", "samples", "estimate", "standard_error"};
  std::vector<std::string> row{std::to_string(n), stat.name(), std::to_string(samples), est.str(), se.str()};
  if (n <= max_reference_n) {
    Rational exact = exact_statistic_fraction(stat, n);
    results["exact"] = rational_json(exact, 12, Rounding::half_even);
    r.columns.push_back("exact");
    row.push_back(to_decimal(exact, 12, Rounding::half_even));
  }
  r.rows.push_back(std::move(row));
  r.results = std::move(results);
  return r;
}

}  // namespace motzkin::cli
