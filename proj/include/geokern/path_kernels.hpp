#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "geokern/node_kernel.hpp"
#include "geokern/tree.hpp"

namespace geokern {

enum class PathRepresentation { node_path, embedded_landmarks };

inline constexpr std::size_t kDefaultLandmarks = 20;

struct PathKernelSpec {
  PathRepresentation representation = PathRepresentation::node_path;
  /// Node-path representation: the node kernel applied position-wise.
  NodeKernelSpec node;
  /// Embedded representation: landmark count, form, and Gaussian width
  /// (default 1/(m*n)).
  std::size_t landmarks = kDefaultLandmarks;
  KernelForm form = KernelForm::gaussian;
  std::optional<double> lambda;
};

/// m landmark points in R^n, stored point-major (m*n values).
struct EmbeddedPath {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> coords;

  std::span<const double> landmark(std::size_t k) const { return {coords.data() + k * n, n}; }
};

/// Resamples the polyline x(path[0]), x(path[1]), ... at m >= 2 points
/// equidistant in arc length, endpoints included. A zero-length polyline
/// yields m copies of its start point.
EmbeddedPath sample_polyline(const GeometricTree& tree, std::span<const NodeIndex> path,
                             std::size_t m);
EmbeddedPath sample_embedded_path(const GeometricTree& tree, NodeIndex from, NodeIndex to,
                                  std::size_t m);

/// Linear: dot product of the stacked coordinates. Gaussian: exp(-lambda*|p-q|^2).
double landmark_path_kernel(const EmbeddedPath& p, const EmbeddedPath& q, KernelForm form,
                            double lambda);
double landmark_path_kernel(const EmbeddedPath& p, const EmbeddedPath& q,
                            const PathKernelSpec& spec);

/// Zero unless both paths have the same node count L; otherwise the sum of
/// node kernels over aligned positions.
double node_path_kernel(const GeometricTree& t1, std::span<const NodeIndex> p1,
                        const GeometricTree& t2, std::span<const NodeIndex> p2,
                        const ResolvedNodeKernel& k);
double node_path_kernel(const GeometricTree& t1, std::span<const NodeIndex> p1,
                        const GeometricTree& t2, std::span<const NodeIndex> p2,
                        const NodeKernelSpec& spec);

/// Sum of the path kernel over all ordered node pairs of each tree, the
/// diagonal (single-node paths) included. Node paths are bucketed by length
/// and compared directly; embedded paths are compared directly.
double all_pairs_kernel(const GeometricTree& t1, const GeometricTree& t2,
                        const PathKernelSpec& spec);

/// Same value as the node-path all_pairs_kernel, computed from per-node
/// occurrence counts: c_u[L,t] is the number of length-L paths with u at
/// position t, and the kernel is sum_{u,w} <c_u, c_w> k_n(u, w).
double all_pairs_node_kernel_counted(const GeometricTree& t1, const GeometricTree& t2,
                                     const NodeKernelSpec& spec);

/// Sum of the path kernel over all pairs of node-to-root paths, by direct
/// enumeration. Reference implementation for the decomposed variants.
double rootpath_kernel_naive(const GeometricTree& t1, const GeometricTree& t2,
                             const PathKernelSpec& spec);

/// Node-path rootpath kernel as a level-wise sum of node kernels weighted by
/// descendant-vector inner products.
double rootpath_kernel_decomposed(const GeometricTree& t1, const GeometricTree& t2,
                                  const NodeKernelSpec& spec);

/// Linear node kernels only: per-level Kronecker features
/// gamma(T, l) = sum_{v on level l} delta(v) (x) x(v) [(x) a(v)].
double rootpath_kernel_linear_fast(const GeometricTree& t1, const GeometricTree& t2,
                                   const NodeKernelSpec& spec);

// ---------------------------------------------------------------------------
// Per-tree precomputations, shared read-only when assembling Gram matrices.

/// Landmark samples of a set of paths in one tree, path-major.
struct LandmarkSet {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t count = 0;
  std::vector<double> coords;

  std::span<const double> path(std::size_t i) const { return {coords.data() + i * m * n, m * n}; }
};

LandmarkSet rootpath_landmarks(const GeometricTree& tree, std::size_t m);
LandmarkSet all_path_landmarks(const GeometricTree& tree, std::size_t m);
/// Sum of the landmark kernel over all path pairs of the two sets.
double landmark_set_kernel(const LandmarkSet& s1, const LandmarkSet& s2, KernelForm form,
                           double lambda);

double rootpath_decomposed_from(const GeometricTree& t1, std::span<const DescendantVector> d1,
                                const GeometricTree& t2, std::span<const DescendantVector> d2,
                                const ResolvedNodeKernel& k);

/// gamma(T, l) for every level, flattened delta-major so that the common
/// prefix of two features corresponds to the common prefix of the descendant
/// vectors.
struct RootpathFeatures {
  std::size_t block = 0;  // n, or n*d with attributes
  std::vector<std::vector<double>> levels;
};

RootpathFeatures rootpath_features(const GeometricTree& tree, bool use_attributes);
double rootpath_features_inner(const RootpathFeatures& f1, const RootpathFeatures& f2);

/// Per-node occurrence counts over (path length, position) slots.
struct PathOccurrences {
  std::size_t slots = 0;  // Lmax*(Lmax+1)/2
  std::vector<double> counts;  // node-major, size() * slots

  std::span<const double> node(NodeIndex v) const { return {counts.data() + v * slots, slots}; }
};

PathOccurrences path_occurrences(const GeometricTree& tree);
double all_pairs_counted_from(const GeometricTree& t1, const PathOccurrences& o1,
                              const GeometricTree& t2, const PathOccurrences& o2,
                              const ResolvedNodeKernel& k);

}  // namespace geokern
