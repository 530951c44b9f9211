#pragma once

// Counting, ranking and uniform random generation of Motzkin trees, plus a
// Monte Carlo estimator for vertex statistics. Shares no counting logic with
// the generating-function code so it can serve as an independent check.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "trees.hpp"

namespace motzkin {

/// t_1 .. t_N from t_n = t_{n-1} + sum_{l=1}^{n-2} t_l t_{n-1-l}, along with
/// the rank offset at which each binary left-size block starts. Read-only
/// after construction.
class CountTable {
 public:
  explicit CountTable(std::size_t max_n) : counts_(max_n + 1), binary_start_(max_n + 1) {
    if (max_n < 1) throw usage_error("CountTable: max size must be at least 1");
    counts_[1] = 1;
    for (std::size_t n = 2; n <= max_n; ++n) {
      auto& starts = binary_start_[n];
      starts.reserve(n);
      Integer offset = counts_[n - 1];  // unary trees come first
      for (std::size_t left = 1; left + 2 <= n; ++left) {
        starts.push_back(offset);
        offset += counts_[left] * counts_[n - 1 - left];
      }
      starts.push_back(offset);  // sentinel: total
      counts_[n] = offset;
    }
  }

  std::size_t max_n() const noexcept { return counts_.size() - 1; }

  const Integer& count(std::size_t n) const {
    check(n);
    return counts_[n];
  }

  /// Rank of the first binary tree with the given left subtree size.
  const Integer& binary_start(std::size_t n, std::size_t left) const {
    check(n);
    return binary_start_[n].at(left - 1);
  }

  std::size_t binary_blocks(std::size_t n) const {
    check(n);
    return n >= 3 ? n - 2 : 0;
  }

 private:
  void check(std::size_t n) const {
    if (n < 1 || n > max_n()) {
      throw usage_error("size " + std::to_string(n) + " outside count table [1, " + std::to_string(max_n()) + "]");
    }
  }

  std::vector<Integer> counts_;
  std::vector<std::vector<Integer>> binary_start_;
};

inline Integer motzkin_count(std::size_t n) { return CountTable(n).count(n); }

/// The i-th tree of size n in the same canonical order as enumerate().
inline TreeNode unrank(const CountTable& table, std::size_t n, const Integer& index) {
  if (sgn(index) < 0 || index >= table.count(n)) {
    throw usage_error("unrank: index out of range for size " + std::to_string(n));
  }
  if (n == 1) return TreeNode::leaf();
  if (index < table.count(n - 1)) return TreeNode::unary(unrank(table, n - 1, index));

  // binary_start(n, left) is increasing in left; find the block holding index.
  std::size_t lo = 1;
  std::size_t hi = table.binary_blocks(n);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (table.binary_start(n, mid) <= index) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const std::size_t left = lo;
  const std::size_t right = n - 1 - left;
  Integer within = index - table.binary_start(n, left);
  Integer li;
  Integer ri;
  mpz_fdiv_qr(li.get_mpz_t(), ri.get_mpz_t(), within.get_mpz_t(), table.count(right).get_mpz_t());
  return TreeNode::binary(unrank(table, left, li), unrank(table, right, ri));
}

inline TreeNode unrank(std::size_t n, const Integer& index) { return unrank(CountTable(n), n, index); }

/// Inverse of unrank.
inline Integer rank(const CountTable& table, const TreeNode& tree) {
  const std::size_t n = tree.size();
  switch (tree.arity()) {
    case 0:
      return Integer(0);
    case 1:
      return rank(table, tree.child(0));
    default: {
      const std::size_t left = tree.child(0).size();
      const std::size_t right = tree.child(1).size();
      return table.binary_start(n, left) + rank(table, tree.child(0)) * table.count(right) +
             rank(table, tree.child(1));
    }
  }
}

// ---------------------------------------------------------------------------
// Randomness

using Engine = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform integer in [0, bound). Draws bit_length(bound) random bits and
/// retries on overshoot, so every value is exactly equally likely.
inline Integer uniform_below(Engine& rng, const Integer& bound) {
  if (sgn(bound) <= 0) throw usage_error("uniform_below: bound must be positive");
  const std::size_t bits = bit_length(bound - 1);
  if (bits == 0) return Integer(0);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  Integer draw;
  for (;;) {
    for (auto& w : buf) w = rng();
    const std::size_t spare = words * 64 - bits;
    if (spare > 0) buf.back() &= ~std::uint64_t{0} >> spare;
    mpz_import(draw.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (draw < bound) return draw;
  }
}

inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  if (bound == 0) throw usage_error("uniform_below: bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Samples are drawn in fixed-size chunks, each from its own generator
/// seeded by mix_seed(seed, chunk). Results therefore do not depend on how
/// many workers process the chunks.
inline constexpr std::size_t sample_chunk = 4096;

inline std::size_t default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min<std::size_t>(hw, 8);
}

namespace detail {

template <class Body>
void run_chunks(std::size_t chunks, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([=] {
      for (std::size_t c = w; c < chunks; c += workers) body(c);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// `count` independent uniform trees of size n; reproducible given (n, seed, count).
inline std::vector<TreeNode> sample_uniform(std::size_t n, std::uint64_t seed, std::size_t count) {
  if (n < 1) throw usage_error("sample_uniform: n must be at least 1");
  CountTable table(n);
  std::vector<TreeNode> out;
  out.reserve(count);
  for (std::size_t c = 0; c * sample_chunk < count; ++c) {
    Engine rng(mix_seed(seed, c));
    const std::size_t end = std::min(count, (c + 1) * sample_chunk);
    for (std::size_t i = c * sample_chunk; i < end; ++i) out.push_back(unrank(table, n, uniform_below(rng, table.count(n))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

enum class StatisticKind { leaf, protected_k, balanced, balanced_rank };

struct Statistic {
  StatisticKind kind = StatisticKind::leaf;
  std::size_t k = 0;

  bool matches(const VertexStats& v) const {
    switch (kind) {
      case StatisticKind::leaf: return v.rank == 0;
      case StatisticKind::protected_k: return v.rank >= k;
      case StatisticKind::balanced: return v.balanced;
      case StatisticKind::balanced_rank: return v.balanced && v.rank == k;
    }
    return false;
  }

  std::string name() const {
    switch (kind) {
      case StatisticKind::leaf: return "leaf";
      case StatisticKind::protected_k: return "protected:" + std::to_string(k);
      case StatisticKind::balanced: return "balanced";
      case StatisticKind::balanced_rank: return "balanced-rank:" + std::to_string(k);
    }
    return "";
  }

  /// Accepts leaf, balanced, protected:K, balanced-rank:K.
  static Statistic parse(const std::string& text) {
    if (text == "leaf") return {StatisticKind::leaf, 0};
    if (text == "balanced") return {StatisticKind::balanced, 0};
    auto with_level = [&](const std::string& prefix, StatisticKind kind) -> std::optional<Statistic> {
      if (text.rfind(prefix, 0) != 0) return std::nullopt;
      std::string digits = text.substr(prefix.size());
      if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
        throw usage_error("bad level in statistic '" + text + "'");
      }
      return Statistic{kind, static_cast<std::size_t>(std::stoul(digits))};
    };
    if (auto s = with_level("protected:", StatisticKind::protected_k)) return *s;
    if (auto s = with_level("balanced-rank:", StatisticKind::balanced_rank)) return *s;
    throw usage_error("unknown statistic '" + text + "' (expected leaf, balanced, protected:K, balanced-rank:K)");
  }
};

struct SampleReport {
  std::size_t n = 0;
  Statistic statistic;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t seed = 0;
};

/// Estimates the probability that a uniform vertex of a uniform n-vertex tree
/// has the statistic. Every tree has n vertices, so this equals the ratio of
/// the statistic's total over all trees to n t_n.
inline SampleReport monte_carlo_estimate(std::size_t n, const Statistic& statistic, std::size_t samples,
                                         std::uint64_t seed, std::size_t workers = default_workers()) {
  if (n < 1) throw usage_error("monte_carlo_estimate: n must be at least 1");
  if (samples < 1) throw usage_error("monte_carlo_estimate: need at least one sample");
  const CountTable table(n);
  const std::size_t chunks = (samples + sample_chunk - 1) / sample_chunk;
  std::vector<std::size_t> hits(chunks, 0);

  detail::run_chunks(chunks, workers, [&](std::size_t c) {
    Engine rng(mix_seed(seed, c));
    const std::size_t end = std::min(samples, (c + 1) * sample_chunk);
    std::size_t h = 0;
    for (std::size_t i = c * sample_chunk; i < end; ++i) {
      TreeNode tree = unrank(table, n, uniform_below(rng, table.count(n)));
      std::uint64_t vertex = uniform_below(rng, static_cast<std::uint64_t>(n));
      if (statistic.matches(vertex_stats(tree)[vertex])) ++h;
    }
    hits[c] = h;
  });

  SampleReport r;
  r.n = n;
  r.statistic = statistic;
  r.samples = samples;
  for (std::size_t h : hits) r.hits += h;
  r.estimate = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.standard_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
  r.seed = seed;
  return r;
}

/// Same totals as aggregate(), with the rank space split across workers
/// and each worker unranking its own share.
inline AggregateCounts aggregate_parallel(std::size_t n, std::size_t k_max = default_k_max,
                                          std::size_t workers = default_workers()) {
  if (n < 1) throw usage_error("aggregate: tree size must be at least 1");
  const CountTable table(n);
  const unsigned long total = table.count(n).get_ui();
  workers = std::max<std::size_t>(1, std::min<std::size_t>(workers, total));
  std::vector<AggregateCounts> parts(workers, AggregateCounts::empty(n, k_max));
  detail::run_chunks(workers, workers, [&](std::size_t w) {
    const unsigned long begin = total * w / workers;
    const unsigned long end = total * (w + 1) / workers;
    for (unsigned long i = begin; i < end; ++i) parts[w].tally(unrank(table, n, Integer(i)));
  });
  AggregateCounts out = AggregateCounts::empty(n, k_max);
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace motzkin
