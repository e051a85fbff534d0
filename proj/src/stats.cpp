#include "geokern/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "geokern/common.hpp"
#include "geokern/parallel.hpp"
#include "geokern/rng.hpp"

namespace geokern {

namespace {

void check_samples(const Eigen::MatrixXd& gram, std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) throw DataError("two-sample statistic: empty sample");
  const auto n = static_cast<std::size_t>(gram.rows());
  std::vector<char> seen(n, 0);
  for (auto sample : {a, b}) {
    for (std::size_t i : sample) {
      if (i >= n) throw DataError("two-sample statistic: index " + std::to_string(i) + " out of range");
      if (seen[i]) throw DataError("two-sample statistic: index " + std::to_string(i) + " used twice");
      seen[i] = 1;
    }
  }
}

// Pooled indices in ascending order with the A-membership of each.
struct Pooled {
  std::vector<std::size_t> index;
  std::vector<char> in_a;
};

Pooled pool(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::pair<std::size_t, char>> all;
  all.reserve(a.size() + b.size());
  for (std::size_t i : a) all.emplace_back(i, 1);
  for (std::size_t i : b) all.emplace_back(i, 0);
  std::ranges::sort(all);
  Pooled p;
  for (const auto& [i, m] : all) {
    p.index.push_back(i);
    p.in_a.push_back(m);
  }
  return p;
}

// Block matrix of the pooled sample, so the permutation loop reads contiguous memory.
Eigen::MatrixXd pooled_block(const Eigen::MatrixXd& gram, const std::vector<std::size_t>& idx) {
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd block(m, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    for (Eigen::Index q = 0; q < m; ++q) {
      block(p, q) = gram(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(p)]),
                         static_cast<Eigen::Index>(idx[static_cast<std::size_t>(q)]));
    }
  }
  return block;
}

double statistic_from_mask(const Eigen::MatrixXd& block, std::span<const char> in_a,
                           std::size_t size_a, std::size_t size_b) {
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  const auto m = block.rows();
  for (Eigen::Index q = 0; q < m; ++q) {
    const bool qa = in_a[static_cast<std::size_t>(q)] != 0;
    const double diag = block(q, q);
    if (qa) {
      saa += diag;
    } else {
      sbb += diag;
    }
    for (Eigen::Index p = q + 1; p < m; ++p) {
      const bool pa = in_a[static_cast<std::size_t>(p)] != 0;
      const double v = block(p, q);
      if (pa && qa) {
        saa += 2.0 * v;
      } else if (!pa && !qa) {
        sbb += 2.0 * v;
      } else {
        sab += v;
      }
    }
  }
  const auto a = static_cast<double>(size_a);
  const auto b = static_cast<double>(size_b);
  const double t2 = (saa / (a * a) + sbb / (b * b)) - 2.0 * sab / (a * b);
  return std::sqrt(std::max(t2, 0.0));
}

double permuted_statistic(const Eigen::MatrixXd& block, std::size_t size_a, std::size_t size_b,
                          std::uint64_t seed, std::size_t i) {
  const std::size_t m = size_a + size_b;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  CounterRng rng(seed, i);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<char> mask(m, 0);
  for (std::size_t k = 0; k < size_a; ++k) mask[order[k]] = 1;
  return statistic_from_mask(block, mask, size_a, size_b);
}

TwoSampleResult finish(double t0, std::vector<double> stats, std::uint64_t seed,
                       std::size_t size_a, std::size_t size_b) {
  TwoSampleResult r;
  r.t0 = t0;
  r.n_permutations = stats.size();
  r.seed = seed;
  r.size_a = size_a;
  r.size_b = size_b;
  r.n_exceeding = static_cast<std::size_t>(
      std::ranges::count_if(stats, [t0](double t) { return t >= t0; }));
  r.p_value = static_cast<double>(r.n_exceeding + 1) / static_cast<double>(stats.size() + 1);
  r.permutation_stats = summarize(std::move(stats));
  return r;
}

}  // namespace

StatisticSummary summarize(std::vector<double> values) {
  StatisticSummary s;
  if (values.empty()) return s;
  std::ranges::sort(values);
  s.min = values.front();
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  for (double prob : {0.05, 0.25, 0.5, 0.75, 0.95}) {
    const double pos = prob * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    s.quantiles.emplace_back(prob, values[lo] + frac * (values[hi] - values[lo]));
  }
  return s;
}

double mean_distance_statistic(const Eigen::MatrixXd& gram, std::span<const std::size_t> a,
                               std::span<const std::size_t> b) {
  check_samples(gram, a, b);
  const Pooled p = pool(a, b);
  return statistic_from_mask(pooled_block(gram, p.index), p.in_a, a.size(), b.size());
}

TwoSampleResult permutation_test(const Eigen::MatrixXd& gram, std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, std::size_t n_permutations,
                                 std::uint64_t seed, int threads) {
  if (n_permutations < 1) throw DataError("permutation test needs at least one permutation");
  check_samples(gram, a, b);
  const Pooled p = pool(a, b);
  const Eigen::MatrixXd block = pooled_block(gram, p.index);
  const double t0 = statistic_from_mask(block, p.in_a, a.size(), b.size());

  std::vector<double> stats(n_permutations);
  parallel_for(n_permutations, threads, [&](std::size_t i) {
    stats[i] = permuted_statistic(block, a.size(), b.size(), seed, i);
  });
  return finish(t0, std::move(stats), seed, a.size(), b.size());
}

TwoSampleResult permutation_test_serial(const Eigen::MatrixXd& gram,
                                        std::span<const std::size_t> a,
                                        std::span<const std::size_t> b,
                                        std::size_t n_permutations, std::uint64_t seed) {
  if (n_permutations < 1) throw DataError("permutation test needs at least one permutation");
  check_samples(gram, a, b);
  const Pooled p = pool(a, b);
  const Eigen::MatrixXd block = pooled_block(gram, p.index);
  const double t0 = statistic_from_mask(block, p.in_a, a.size(), b.size());
  std::vector<double> stats;
  stats.reserve(n_permutations);
  for (std::size_t i = 0; i < n_permutations; ++i) {
    stats.push_back(permuted_statistic(block, a.size(), b.size(), seed, i));
  }
  return finish(t0, std::move(stats), seed, a.size(), b.size());
}

std::vector<int> nearest_mean_classify(const Eigen::MatrixXd& gram,
                                       std::span<const std::size_t> a,
                                       std::span<const std::size_t> b,
                                       std::span<const std::size_t> queries) {
  check_samples(gram, a, b);
  for (std::size_t z : queries) {
    if (z >= static_cast<std::size_t>(gram.rows())) throw DataError("query index out of range");
    if (std::ranges::find(a, z) != a.end() || std::ranges::find(b, z) != b.end()) {
      throw DataError("query index " + std::to_string(z) + " is also a training index");
    }
  }
  const auto g = [&](std::size_t i, std::size_t j) {
    return gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  const auto self_term = [&](std::span<const std::size_t> s) {
    double sum = 0.0;
    for (std::size_t i : s) {
      for (std::size_t j : s) sum += g(i, j);
    }
    return sum / static_cast<double>(s.size() * s.size());
  };
  const double self_a = self_term(a);
  const double self_b = self_term(b);

  std::vector<int> labels;
  labels.reserve(queries.size());
  for (std::size_t z : queries) {
    double cross_a = 0.0;
    double cross_b = 0.0;
    for (std::size_t i : a) cross_a += g(z, i);
    for (std::size_t i : b) cross_b += g(z, i);
    const double kzz = g(z, z);
    const double dist_a = kzz - 2.0 * cross_a / static_cast<double>(a.size()) + self_a;
    const double dist_b = kzz - 2.0 * cross_b / static_cast<double>(b.size()) + self_b;
    labels.push_back(dist_a <= dist_b ? 0 : 1);
  }
  return labels;
}

HoldoutSplit stratified_holdout(std::span<const int> labels, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw DataError("holdout fraction must be in [0, 1)");
  HoldoutSplit split;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    CounterRng rng(seed, static_cast<std::uint64_t>(cls));
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_test = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(members.size())));
    if (n_test >= members.size()) {
      throw DataError("holdout leaves class " + std::to_string(cls) + " without training items");
    }
    split.test.insert(split.test.end(), members.begin(),
                      members.begin() + static_cast<std::ptrdiff_t>(n_test));
    auto& train = cls == 0 ? split.train_a : split.train_b;
    train.assign(members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    std::ranges::sort(train);
  }
  std::ranges::sort(split.test);
  return split;
}

ClassificationReport holdout_classify(const Eigen::MatrixXd& gram, std::span<const int> labels,
                                      double fraction, std::uint64_t seed) {
  if (static_cast<std::size_t>(gram.rows()) != labels.size()) {
    throw DataError("holdout_classify: label count does not match Gram size");
  }
  const HoldoutSplit split = stratified_holdout(labels, fraction, seed);
  const auto predicted = nearest_mean_classify(gram, split.train_a, split.train_b, split.test);
  ClassificationReport r;
  r.n_test = split.test.size();
  std::size_t correct = 0;
  for (std::size_t k = 0; k < split.test.size(); ++k) {
    const int truth = labels[split.test[k]];
    ++r.total[truth];
    if (predicted[k] == truth) {
      ++r.correct[truth];
      ++correct;
    }
  }
  r.accuracy = r.n_test == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(r.n_test);
  return r;
}

}  // namespace geokern
