#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geokern/node_kernel.hpp"
#include "geokern/tree.hpp"

namespace geokern {

// Pointcloud ---------------------------------------------------------------

/// Every non-root node stands for the edge to its parent; the edge point
/// carries the child's position and attributes. Sum over all edge pairs of
/// exp(-l1 |x1-x2|^2) * exp(-l2 |a1-a2|^2). Unattributed trees use the
/// geometric factor alone. l1, l2 default to 1/n, 1/d.
double pointcloud_kernel(const GeometricTree& t1, const GeometricTree& t2,
                         std::optional<double> lambda1 = {}, std::optional<double> lambda2 = {});

// Attribute averages --------------------------------------------------------

/// Mean of attribute component `component` over all nodes.
double attribute_mean(const GeometricTree& tree, std::size_t component);

/// exp(-(m1-m2)^2) on the global attribute means, or m1*m2 in linear form.
double average_attribute_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                std::size_t component = 0,
                                KernelForm form = KernelForm::gaussian);

/// Per-generation attribute means for generations gen_lo..gen_hi, where the
/// generation of a node is its depth (root = 0). Empty generations give 0 and
/// a warning.
std::vector<double> generation_means(const GeometricTree& tree, std::size_t component,
                                     std::size_t gen_lo, std::size_t gen_hi);

double generation_average_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                 std::size_t gen_lo = 3, std::size_t gen_hi = 6,
                                 std::size_t component = 0,
                                 KernelForm form = KernelForm::gaussian);

// Branch counts -------------------------------------------------------------

struct BranchcountValues {
  double lbc = 0.0;
  double gbc = 0.0;
};

/// lbc = |V1| |V2|, gbc = exp(-(|V1|-|V2|)^2).
BranchcountValues branchcount_kernels(const GeometricTree& t1, const GeometricTree& t2);

// Shortest path -------------------------------------------------------------

enum class LengthKernel { delta, linear };

/// histogram[l] = number of ordered node pairs (diagonal included) whose
/// connecting path has l edges.
std::vector<std::int64_t> path_length_histogram(const GeometricTree& tree);

double shortest_path_from(std::span<const std::int64_t> h1, std::span<const std::int64_t> h2,
                          LengthKernel length_kernel);

double shortest_path_kernel(const GeometricTree& t1, const GeometricTree& t2,
                            LengthKernel length_kernel = LengthKernel::delta);

// Weisfeiler-Lehman ---------------------------------------------------------

struct WLConfig {
  std::size_t iterations = 10;
};

/// Sparse label histogram per refinement round, each sorted by label.
struct WLFeatures {
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> rounds;
};

/// Runs degree-initialized WL refinement over a whole population with one
/// shared label dictionary per round.
std::vector<WLFeatures> weisfeiler_lehman_features(std::span<const GeometricTree> trees,
                                                   const WLConfig& cfg);

double weisfeiler_lehman_from(const WLFeatures& f1, const WLFeatures& f2);

double weisfeiler_lehman_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                const WLConfig& cfg = {});

}  // namespace geokern
