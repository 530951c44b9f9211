// motzkin: exact generating-function coefficients, limiting proportions and
// rigorous bounds for protected and balanced vertices in Motzkin trees.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "motzkin/cli.hpp"

namespace {

using namespace motzkin::cli;

int emit(const OutputRecord& record, const std::string& format) {
  std::cout << render(record, parse_format(format));
  return record.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protected and balanced vertices in Motzkin trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", artifact_version);

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  };

  std::size_t max_k = 6;
  std::size_t digits = 8;
  auto* table = app.add_subcommand("table", "Limiting probability that a vertex is k-protected");
  table->add_option("--max-k", max_k, "Largest protection level")->capture_default_str();
  table->add_option("--digits", digits, "Decimal places")->capture_default_str();
  add_format(table);

  std::string selector;
  std::string range = "1..10";
  auto* coeffs = app.add_subcommand("coeffs", "Exact generating-function coefficients");
  coeffs->add_option("selector", selector, std::string("One of: ") + coefficient_selectors)->required();
  coeffs->add_option("--range", range, "Coefficient range A..B")->capture_default_str();
  add_format(coeffs);

  std::size_t max_n = 12;
  std::size_t verify_k = 4;
  auto* verify = app.add_subcommand("verify", "Compare brute-force enumeration with generating functions");
  verify->add_option("--max-n", max_n, "Largest tree size (at most 14)")->capture_default_str();
  verify->add_option("--max-k", verify_k, "Largest protection / rank level")->capture_default_str();
  add_format(verify);

  std::size_t cutoff = 20;
  std::size_t interval_digits = 18;
  auto* bounds = app.add_subcommand("bounds", "Interval for the probability that a vertex is balanced");
  bounds->add_option("--cutoff", cutoff, "Number of exact terms before the geometric tail")->capture_default_str();
  bounds->add_option("--digits", interval_digits, "Decimal places")->capture_default_str();
  add_format(bounds);

  auto* expected = app.add_subcommand("expected-rank", "Interval for the expected rank of a balanced vertex");
  expected->add_option("--cutoff", cutoff, "Number of exact terms before the geometric tail")->capture_default_str();
  expected->add_option("--digits", interval_digits, "Decimal places")->capture_default_str();
  add_format(expected);

  std::size_t n = 0;
  std::string statistic;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t workers = motzkin::default_workers();
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate over uniform random trees");
  sample->add_option("-n,--n", n, "Tree size")->required();
  sample->add_option("--statistic", statistic, "leaf, balanced, protected:K or balanced-rank:K")->required();
  sample->add_option("--samples", samples, "Number of samples")->capture_default_str();
  sample->add_option("--seed", seed, "Random seed")->required();
  sample->add_option("--workers", workers, "Worker threads (does not change the result)");
  add_format(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*table) return emit(cmd_table(max_k, digits), format);
    if (*coeffs) {
      auto sep = range.find("..");
      if (sep == std::string::npos) throw motzkin::usage_error("--range must look like A..B");
      std::size_t from = std::stoul(range.substr(0, sep));
      std::size_t to = std::stoul(range.substr(sep + 2));
      return emit(cmd_coeffs(selector, from, to), format);
    }
    if (*verify) return emit(cmd_verify(max_n, verify_k), format);
    if (*bounds) return emit(cmd_bounds(cutoff, interval_digits), format);
    if (*expected) return emit(cmd_expected_rank(cutoff, interval_digits), format);
    if (*sample) return emit(cmd_sample(n, statistic, samples, seed, workers), format);
  } catch (const motzkin::usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number in arguments (" << e.what() << ")\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  return exit_internal;
}
