#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geokern/kernel_spec.hpp"
#include "geokern/tree.hpp"

namespace geokern {

/// Complete binary tree with `size` nodes in heap order (parent of i is
/// (i-1)/2), positions uniform in [-1, 1]^n drawn from stream (seed, stream).
GeometricTree balanced_binary_tree(std::size_t size, std::size_t n, std::uint64_t seed,
                                   std::uint64_t stream, std::string id = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct ScalingRow {
  std::size_t nodes = 0;
  std::size_t height = 0;
  double median_seconds = 0.0;  // per kernel evaluation
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double slope = 0.0;
};

/// Times evaluate_kernel on pairs of balanced binary trees of each size.
/// Each repeat batches calls until `min_time` seconds have passed and records
/// the mean time per call; the row reports the median over repeats.
ScalingResult measure_scaling(const KernelSpec& spec, std::span<const std::size_t> sizes,
                              std::size_t repeats, std::size_t n = 3, std::uint64_t seed = 0,
                              double min_time = 0.02);

}  // namespace geokern
