#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace geokern {

struct StatisticSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  /// (probability, value) pairs at 0.05, 0.25, 0.5, 0.75, 0.95.
  std::vector<std::pair<double, double>> quantiles;
};

StatisticSummary summarize(std::vector<double> values);

struct TwoSampleResult {
  double t0 = 0.0;
  double p_value = 1.0;
  std::size_t n_permutations = 0;
  std::uint64_t seed = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t n_exceeding = 0;  // permutations with T_i >= T_0
  StatisticSummary permutation_stats;
};

/// Distance between the sample means of A and B in the kernel feature space,
/// computed from the Gram matrix. Negative round-off in T^2 is clamped to 0.
/// Summation runs over the sorted union of A and B, so the value is exactly
/// symmetric in (A, B) and depends only on the partition.
double mean_distance_statistic(const Eigen::MatrixXd& gram, std::span<const std::size_t> a,
                               std::span<const std::size_t> b);

/// Monte-Carlo permutation test: N relabelings of A u B preserving |A| and |B|,
/// p = (#{T_i >= T_0} + 1) / (N + 1). Permutation i draws from counter stream
/// (seed, i), so the result is identical for any thread count.
TwoSampleResult permutation_test(const Eigen::MatrixXd& gram, std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, std::size_t n_permutations,
                                 std::uint64_t seed, int threads = 1);

/// Single-threaded reference for permutation_test.
TwoSampleResult permutation_test_serial(const Eigen::MatrixXd& gram,
                                        std::span<const std::size_t> a,
                                        std::span<const std::size_t> b,
                                        std::size_t n_permutations, std::uint64_t seed);

/// Labels each query 0 (class A) or 1 (class B) by the nearer class mean in
/// feature space. Ties go to A.
std::vector<int> nearest_mean_classify(const Eigen::MatrixXd& gram,
                                       std::span<const std::size_t> a,
                                       std::span<const std::size_t> b,
                                       std::span<const std::size_t> queries);

struct HoldoutSplit {
  std::vector<std::size_t> train_a;
  std::vector<std::size_t> train_b;
  std::vector<std::size_t> test;
};

/// Holds out round(fraction * |class|) items of each class (labels 0/1).
/// Throws DataError if a class would have no training items.
HoldoutSplit stratified_holdout(std::span<const int> labels, double fraction, std::uint64_t seed);

struct ClassificationReport {
  double accuracy = 0.0;
  std::size_t n_test = 0;
  std::size_t correct[2] = {0, 0};
  std::size_t total[2] = {0, 0};
};

ClassificationReport holdout_classify(const Eigen::MatrixXd& gram, std::span<const int> labels,
                                      double fraction, std::uint64_t seed);

}  // namespace geokern
