#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <vector>

namespace geokern {

using NodeIndex = std::size_t;

/// Input record for one node. `parent` refers to a position in the input
/// sequence; the root has none.
struct Node {
  std::optional<NodeIndex> parent;
  std::vector<double> x;
  std::vector<double> a;
};

/// Rooted tree with node positions in R^n and optional attributes in R^d.
///
/// Nodes are stored in canonical breadth-first order: sorted by level, then
/// by parent index, then by input order. The root is always node 0 and the
/// nodes of each level form a contiguous index range. Levels are 1-based
/// (the root is on level 1). Instances are immutable once built.
class GeometricTree {
 public:
  GeometricTree() = default;

  /// Validates `nodes` and returns the canonicalized tree. Throws DataError
  /// on cycles, multiple roots, bad parent references or dimension mismatch.
  static GeometricTree build(std::string id, std::size_t n, std::size_t d,
                             std::vector<Node> nodes);

  const std::string& id() const { return id_; }
  std::size_t size() const { return parent_.size(); }
  std::size_t dim() const { return n_; }
  std::size_t attr_dim() const { return d_; }
  std::size_t height() const { return level_offset_.size() - 1; }
  NodeIndex root() const { return 0; }

  std::optional<NodeIndex> parent(NodeIndex v) const {
    if (v == 0) return std::nullopt;
    return parent_[v];
  }
  std::span<const NodeIndex> children(NodeIndex v) const {
    return {child_list_.data() + child_offset_[v],
            child_offset_[v + 1] - child_offset_[v]};
  }
  std::size_t level(NodeIndex v) const { return level_[v]; }
  /// Undirected degree.
  std::size_t degree(NodeIndex v) const {
    return children(v).size() + (v == 0 ? 0 : 1);
  }

  std::span<const double> position(NodeIndex v) const {
    return {x_.data() + v * n_, n_};
  }
  std::span<const double> attributes(NodeIndex v) const {
    return {a_.data() + v * d_, d_};
  }

  /// Indices of the nodes on level `l` (1-based); empty past the height.
  std::ranges::iota_view<NodeIndex, NodeIndex> level_nodes(std::size_t l) const {
    if (l == 0 || l > height()) return {0, 0};
    return {level_offset_[l - 1], level_offset_[l]};
  }

  bool operator==(const GeometricTree&) const = default;

 private:
  std::string id_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<NodeIndex> parent_;  // parent_[0] is unused
  std::vector<std::size_t> level_;
  std::vector<std::size_t> level_offset_;
  std::vector<std::size_t> child_offset_;
  std::vector<NodeIndex> child_list_;
  std::vector<double> x_;
  std::vector<double> a_;
};

/// Node sequence from `from` up to the highest common ancestor and down to `to`.
using NodePath = std::vector<NodeIndex>;

NodePath node_path(const GeometricTree& tree, NodeIndex from, NodeIndex to);

/// counts[j] is the number of descendants (the node itself included) at
/// relative depth j.
using DescendantVector = std::vector<std::int64_t>;

/// [a0+b0, a1+b1, ...] with the shorter operand implicitly zero-padded.
DescendantVector left_aligned_add(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> b);

/// Descendant vector of every node, indexed by node.
std::vector<DescendantVector> descendant_vectors(const GeometricTree& tree);

std::vector<NodeIndex> nodes_at_level(const GeometricTree& tree, std::size_t level);

/// Total order on trees used to fix the argument order of pairwise kernels,
/// which makes every kernel exactly symmetric in floating point.
bool canonical_less(const GeometricTree& lhs, const GeometricTree& rhs);

}  // namespace geokern
