// Test helpers: small tree builders, a random tree source and independent
// oracles that do not reuse library path or descendant code.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geokern/node_kernel.hpp"
#include "geokern/rng.hpp"
#include "geokern/tree.hpp"

namespace testsupport {

using geokern::GeometricTree;
using geokern::Node;
using geokern::NodeIndex;

inline GeometricTree make_tree(std::vector<std::optional<std::size_t>> parents,
                               std::vector<std::vector<double>> xs,
                               std::vector<std::vector<double>> as = {},
                               std::string id = "t") {
  const std::size_t n = xs.empty() ? 0 : xs[0].size();
  const std::size_t d = as.empty() ? 0 : as[0].size();
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    nodes.push_back({parents[i], xs[i], as.empty() ? std::vector<double>{} : as[i]});
  }
  return GeometricTree::build(std::move(id), n, d, std::move(nodes));
}

/// Chain root -> ... with the given positions; optional attributes per node.
inline GeometricTree chain(std::vector<std::vector<double>> xs,
                           std::vector<std::vector<double>> as = {}, std::string id = "chain") {
  std::vector<std::optional<std::size_t>> parents;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    parents.push_back(i == 0 ? std::nullopt : std::optional<std::size_t>(i - 1));
  }
  return make_tree(std::move(parents), std::move(xs), std::move(as), std::move(id));
}

/// Random recursive tree (parent of node i uniform among earlier nodes),
/// handed to build() in shuffled order so canonicalization is exercised.
inline GeometricTree random_tree(geokern::CounterRng& rng, std::size_t size, std::size_t n,
                                 std::size_t d, std::string id = "rand") {
  std::vector<std::size_t> parent(size, 0);
  for (std::size_t i = 1; i < size; ++i) parent[i] = rng.below(i);
  std::vector<std::size_t> order(size);
  for (std::size_t i = 0; i < size; ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::size_t> where(size);
  for (std::size_t k = 0; k < size; ++k) where[order[k]] = k;
  std::vector<Node> nodes(size);
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t i = order[k];
    if (i > 0) nodes[k].parent = where[parent[i]];
    nodes[k].x.resize(n);
    for (double& c : nodes[k].x) c = rng.uniform(-1.0, 1.0);
    nodes[k].a.resize(d);
    for (double& c : nodes[k].a) c = rng.uniform(-1.0, 1.0);
  }
  return GeometricTree::build(std::move(id), n, d, std::move(nodes));
}

// ---- oracles ---------------------------------------------------------------

/// v, parent(v), ..., root.
inline std::vector<NodeIndex> ancestors(const GeometricTree& t, NodeIndex v) {
  std::vector<NodeIndex> out{v};
  while (auto p = t.parent(out.back())) out.push_back(*p);
  return out;
}

/// Path between two nodes from ancestor chains alone.
inline std::vector<NodeIndex> brute_path(const GeometricTree& t, NodeIndex i, NodeIndex j) {
  const auto ai = ancestors(t, i);
  const auto aj = ancestors(t, j);
  std::size_t pi = 0;
  std::size_t pj = 0;
  for (; pi < ai.size(); ++pi) {
    const auto it = std::find(aj.begin(), aj.end(), ai[pi]);
    if (it != aj.end()) {
      pj = static_cast<std::size_t>(it - aj.begin());
      break;
    }
  }
  std::vector<NodeIndex> path(ai.begin(), ai.begin() + static_cast<std::ptrdiff_t>(pi) + 1);
  for (std::size_t k = pj; k-- > 0;) path.push_back(aj[k]);
  return path;
}

inline double brute_node_kernel(const GeometricTree& t1, NodeIndex u, const GeometricTree& t2,
                                NodeIndex w, bool linear, bool attributed, double l1, double l2) {
  const auto x1 = t1.position(u), x2 = t2.position(w);
  double v;
  if (linear) {
    v = 0.0;
    for (std::size_t k = 0; k < x1.size(); ++k) v += x1[k] * x2[k];
  } else {
    double s = 0.0;
    for (std::size_t k = 0; k < x1.size(); ++k) s += (x1[k] - x2[k]) * (x1[k] - x2[k]);
    v = std::exp(-l1 * s);
  }
  if (attributed) {
    const auto a1 = t1.attributes(u), a2 = t2.attributes(w);
    if (linear) {
      double s = 0.0;
      for (std::size_t k = 0; k < a1.size(); ++k) s += a1[k] * a2[k];
      v *= s;
    } else {
      double s = 0.0;
      for (std::size_t k = 0; k < a1.size(); ++k) s += (a1[k] - a2[k]) * (a1[k] - a2[k]);
      v *= std::exp(-l2 * s);
    }
  }
  return v;
}

using NodeK = std::function<double(NodeIndex, NodeIndex)>;

inline double brute_path_kernel(const std::vector<NodeIndex>& p, const std::vector<NodeIndex>& q,
                                const NodeK& k) {
  if (p.size() != q.size()) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += k(p[i], q[i]);
  return s;
}

/// Exhaustive all-pairs node-path kernel: every ordered pair in each tree.
inline double brute_all_pairs(const GeometricTree& t1, const GeometricTree& t2, const NodeK& k) {
  std::vector<std::vector<NodeIndex>> p1, p2;
  for (NodeIndex i = 0; i < t1.size(); ++i)
    for (NodeIndex j = 0; j < t1.size(); ++j) p1.push_back(brute_path(t1, i, j));
  for (NodeIndex i = 0; i < t2.size(); ++i)
    for (NodeIndex j = 0; j < t2.size(); ++j) p2.push_back(brute_path(t2, i, j));
  double s = 0.0;
  for (const auto& a : p1)
    for (const auto& b : p2) s += brute_path_kernel(a, b, k);
  return s;
}

/// Exhaustive rootpath node-path kernel.
inline double brute_rootpath(const GeometricTree& t1, const GeometricTree& t2, const NodeK& k) {
  double s = 0.0;
  for (NodeIndex i = 0; i < t1.size(); ++i)
    for (NodeIndex j = 0; j < t2.size(); ++j)
      s += brute_path_kernel(ancestors(t1, i), ancestors(t2, j), k);
  return s;
}

/// Descendant counts by relative depth via an explicit subtree walk.
inline std::vector<std::int64_t> brute_descendants(const GeometricTree& t, NodeIndex v) {
  std::vector<std::int64_t> counts;
  for (NodeIndex u = 0; u < t.size(); ++u) {
    const auto anc = ancestors(t, u);
    const auto it = std::find(anc.begin(), anc.end(), v);
    if (it == anc.end()) continue;
    const auto depth = static_cast<std::size_t>(it - anc.begin());
    if (counts.size() <= depth) counts.resize(depth + 1, 0);
    ++counts[depth];
  }
  return counts;
}

inline bool rel_close(double a, double b, double rel) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * std::max(scale, 1e-300);
}

}  // namespace testsupport
