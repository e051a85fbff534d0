#include "geokern/tree.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "geokern/common.hpp"

namespace geokern {

GeometricTree GeometricTree::build(std::string id, std::size_t n, std::size_t d,
                                   std::vector<Node> nodes) {
  const std::size_t count = nodes.size();
  if (count == 0) throw DataError("tree '" + id + "': no nodes");
  if (n == 0) throw DataError("tree '" + id + "': geometric dimension n must be positive");

  std::optional<NodeIndex> root;
  std::vector<std::vector<NodeIndex>> kids(count);
  for (NodeIndex i = 0; i < count; ++i) {
    const Node& node = nodes[i];
    if (node.x.size() != n) {
      throw DataError("tree '" + id + "': node " + std::to_string(i) + " has x of length " +
                      std::to_string(node.x.size()) + ", expected " + std::to_string(n));
    }
    if (node.a.size() != d) {
      throw DataError("tree '" + id + "': node " + std::to_string(i) + " has a of length " +
                      std::to_string(node.a.size()) + ", expected " + std::to_string(d));
    }
    if (!node.parent) {
      if (root) throw DataError("tree '" + id + "': multiple roots");
      root = i;
      continue;
    }
    const NodeIndex p = *node.parent;
    if (p >= count) {
      throw DataError("tree '" + id + "': node " + std::to_string(i) +
                      " references missing parent " + std::to_string(p));
    }
    if (p == i) throw DataError("tree '" + id + "': cycle detected");
    kids[p].push_back(i);
  }
  // With every node carrying a parent, following parents must revisit a node.
  if (!root) throw DataError("tree '" + id + "': cycle detected");

  GeometricTree t;
  t.id_ = std::move(id);
  t.n_ = n;
  t.d_ = d;

  // Breadth-first from the root, children in input order. This realizes the
  // (level, parent index, input order) canonical ordering.
  std::vector<NodeIndex> order;
  std::vector<NodeIndex> canon(count, count);
  std::vector<std::size_t> input_level(count, 0);
  order.reserve(count);
  order.push_back(*root);
  canon[*root] = 0;
  input_level[*root] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeIndex u = order[head];
    for (NodeIndex c : kids[u]) {
      canon[c] = order.size();
      input_level[c] = input_level[u] + 1;
      order.push_back(c);
    }
  }
  if (order.size() != count) throw DataError("tree '" + t.id_ + "': cycle detected");

  t.parent_.assign(count, 0);
  t.level_.resize(count);
  t.x_.reserve(count * n);
  t.a_.reserve(count * d);
  t.child_offset_.assign(count + 1, 0);
  for (std::size_t k = 0; k < count; ++k) {
    const NodeIndex src = order[k];
    if (k > 0) t.parent_[k] = canon[*nodes[src].parent];
    t.level_[k] = input_level[src];
    t.x_.insert(t.x_.end(), nodes[src].x.begin(), nodes[src].x.end());
    t.a_.insert(t.a_.end(), nodes[src].a.begin(), nodes[src].a.end());
    t.child_offset_[k + 1] = t.child_offset_[k] + kids[src].size();
  }
  t.child_list_.reserve(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    for (NodeIndex c : kids[order[k]]) t.child_list_.push_back(canon[c]);
  }

  const std::size_t h = t.level_.back();
  t.level_offset_.assign(h + 1, count);
  t.level_offset_[0] = 0;
  for (std::size_t k = count; k-- > 0;) t.level_offset_[t.level_[k] - 1] = k;
  t.level_offset_[h] = count;
  return t;
}

NodePath node_path(const GeometricTree& tree, NodeIndex from, NodeIndex to) {
  if (from >= tree.size() || to >= tree.size()) {
    throw DataError("node_path: index out of range for tree '" + tree.id() + "'");
  }
  NodePath up;
  NodePath down;
  NodeIndex a = from;
  NodeIndex b = to;
  while (tree.level(a) > tree.level(b)) {
    up.push_back(a);
    a = *tree.parent(a);
  }
  while (tree.level(b) > tree.level(a)) {
    down.push_back(b);
    b = *tree.parent(b);
  }
  while (a != b) {
    up.push_back(a);
    down.push_back(b);
    a = *tree.parent(a);
    b = *tree.parent(b);
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

DescendantVector left_aligned_add(std::span<const std::int64_t> a,
                                  std::span<const std::int64_t> b) {
  if (a.size() < b.size()) std::swap(a, b);
  DescendantVector out(a.begin(), a.end());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::vector<DescendantVector> descendant_vectors(const GeometricTree& tree) {
  std::vector<DescendantVector> delta(tree.size());
  // Reverse canonical order visits children before parents.
  for (std::size_t k = tree.size(); k-- > 0;) {
    DescendantVector& dv = delta[k];
    dv.assign(1, 1);
    for (NodeIndex c : tree.children(k)) {
      const DescendantVector& child = delta[c];
      if (dv.size() < child.size() + 1) dv.resize(child.size() + 1, 0);
      for (std::size_t j = 0; j < child.size(); ++j) dv[j + 1] += child[j];
    }
  }
  return delta;
}

std::vector<NodeIndex> nodes_at_level(const GeometricTree& tree, std::size_t level) {
  std::vector<NodeIndex> out;
  for (NodeIndex v : tree.level_nodes(level)) out.push_back(v);
  return out;
}

bool canonical_less(const GeometricTree& lhs, const GeometricTree& rhs) {
  const auto key = [](const GeometricTree& t) {
    return std::make_tuple(t.size(), t.dim(), t.attr_dim(), t.height(), std::cref(t.id()));
  };
  if (key(lhs) != key(rhs)) return key(lhs) < key(rhs);
  for (NodeIndex v = 0; v < lhs.size(); ++v) {
    if (lhs.parent(v) != rhs.parent(v)) return lhs.parent(v) < rhs.parent(v);
  }
  for (NodeIndex v = 0; v < lhs.size(); ++v) {
    auto px = lhs.position(v);
    auto qx = rhs.position(v);
    if (!std::ranges::equal(px, qx)) {
      return std::ranges::lexicographical_compare(px, qx);
    }
    auto pa = lhs.attributes(v);
    auto qa = rhs.attributes(v);
    if (!std::ranges::equal(pa, qa)) {
      return std::ranges::lexicographical_compare(pa, qa);
    }
  }
  return false;
}

}  // namespace geokern
