#include "geokern/path_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "geokern/common.hpp"

namespace geokern {

namespace {

double common_prefix_dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::min(a.size(), b.size());
  return dot(a.first(len), b.first(len));
}

std::int64_t common_prefix_dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const std::size_t len = std::min(a.size(), b.size());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < len; ++i) s += a[i] * b[i];
  return s;
}

double embedded_lambda(const PathKernelSpec& spec, std::size_t n) {
  const double lambda =
      spec.lambda.value_or(1.0 / static_cast<double>(spec.landmarks * n));
  if (!(lambda > 0.0)) throw SpecError("landmark kernel width lambda must be positive");
  return lambda;
}

void check_embedded(const PathKernelSpec& spec, const GeometricTree& t1, const GeometricTree& t2) {
  if (spec.landmarks < 2) throw SpecError("embedded paths need at least 2 landmarks");
  if (t1.dim() != t2.dim()) {
    throw DataError("trees '" + t1.id() + "' and '" + t2.id() + "' differ in dimension n");
  }
}

std::vector<NodePath> rootpaths(const GeometricTree& tree) {
  std::vector<NodePath> paths(tree.size());
  for (NodeIndex v = 0; v < tree.size(); ++v) paths[v] = node_path(tree, v, tree.root());
  return paths;
}

// Flat slot index of position t (0-based) on a path with L nodes.
constexpr std::size_t slot(std::size_t L, std::size_t t) { return L * (L - 1) / 2 + t; }

}  // namespace

EmbeddedPath sample_polyline(const GeometricTree& tree, std::span<const NodeIndex> path,
                             std::size_t m) {
  if (m < 2) throw SpecError("embedded paths need at least 2 landmarks");
  const std::size_t n = tree.dim();
  EmbeddedPath out{m, n, std::vector<double>(m * n)};

  std::vector<double> cumulative(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    cumulative[i] = cumulative[i - 1] +
                    std::sqrt(squared_distance(tree.position(path[i - 1]), tree.position(path[i])));
  }
  const double total = cumulative.back();
  const auto start = tree.position(path.front());
  if (total <= 0.0) {
    for (std::size_t k = 0; k < m; ++k) std::ranges::copy(start, out.coords.begin() + k * n);
    return out;
  }

  std::size_t seg = 1;
  for (std::size_t k = 0; k < m; ++k) {
    double* dst = out.coords.data() + k * n;
    if (k == m - 1) {
      std::ranges::copy(tree.position(path.back()), dst);
      continue;
    }
    const double s = total * static_cast<double>(k) / static_cast<double>(m - 1);
    while (seg + 1 < path.size() && cumulative[seg] < s) ++seg;
    const double len = cumulative[seg] - cumulative[seg - 1];
    const double t = len > 0.0 ? std::clamp((s - cumulative[seg - 1]) / len, 0.0, 1.0) : 0.0;
    const auto p = tree.position(path[seg - 1]);
    const auto q = tree.position(path[seg]);
    for (std::size_t i = 0; i < n; ++i) dst[i] = p[i] + t * (q[i] - p[i]);
  }
  return out;
}

EmbeddedPath sample_embedded_path(const GeometricTree& tree, NodeIndex from, NodeIndex to,
                                  std::size_t m) {
  const NodePath path = node_path(tree, from, to);
  return sample_polyline(tree, path, m);
}

double landmark_path_kernel(const EmbeddedPath& p, const EmbeddedPath& q, KernelForm form,
                            double lambda) {
  if (p.m != q.m || p.n != q.n) {
    throw DataError("landmark paths differ in landmark count or dimension");
  }
  if (form == KernelForm::linear) return dot(p.coords, q.coords);
  return std::exp(-lambda * squared_distance(p.coords, q.coords));
}

double landmark_path_kernel(const EmbeddedPath& p, const EmbeddedPath& q,
                            const PathKernelSpec& spec) {
  const double lambda = spec.lambda.value_or(1.0 / static_cast<double>(p.m * p.n));
  return landmark_path_kernel(p, q, spec.form, lambda);
}

double node_path_kernel(const GeometricTree& t1, std::span<const NodeIndex> p1,
                        const GeometricTree& t2, std::span<const NodeIndex> p2,
                        const ResolvedNodeKernel& k) {
  if (p1.size() != p2.size()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) sum += node_kernel(t1, p1[i], t2, p2[i], k);
  return sum;
}

double node_path_kernel(const GeometricTree& t1, std::span<const NodeIndex> p1,
                        const GeometricTree& t2, std::span<const NodeIndex> p2,
                        const NodeKernelSpec& spec) {
  return node_path_kernel(t1, p1, t2, p2, resolve(spec, t1, t2));
}

// ---------------------------------------------------------------------------
// Embedded landmark sets

LandmarkSet rootpath_landmarks(const GeometricTree& tree, std::size_t m) {
  LandmarkSet set{m, tree.dim(), tree.size(), {}};
  set.coords.reserve(set.count * m * set.n);
  for (NodeIndex v = 0; v < tree.size(); ++v) {
    const EmbeddedPath p = sample_embedded_path(tree, v, tree.root(), m);
    set.coords.insert(set.coords.end(), p.coords.begin(), p.coords.end());
  }
  return set;
}

LandmarkSet all_path_landmarks(const GeometricTree& tree, std::size_t m) {
  LandmarkSet set{m, tree.dim(), tree.size() * tree.size(), {}};
  set.coords.reserve(set.count * m * set.n);
  for (NodeIndex i = 0; i < tree.size(); ++i) {
    for (NodeIndex j = 0; j < tree.size(); ++j) {
      const EmbeddedPath p = sample_embedded_path(tree, i, j, m);
      set.coords.insert(set.coords.end(), p.coords.begin(), p.coords.end());
    }
  }
  return set;
}

double landmark_set_kernel(const LandmarkSet& s1, const LandmarkSet& s2, KernelForm form,
                           double lambda) {
  if (s1.m != s2.m || s1.n != s2.n) {
    throw DataError("landmark sets differ in landmark count or dimension");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < s1.count; ++i) {
    const auto p = s1.path(i);
    double row = 0.0;
    if (form == KernelForm::linear) {
      for (std::size_t j = 0; j < s2.count; ++j) row += dot(p, s2.path(j));
    } else {
      for (std::size_t j = 0; j < s2.count; ++j) {
        row += std::exp(-lambda * squared_distance(p, s2.path(j)));
      }
    }
    sum += row;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// All-pairs kernels

double all_pairs_kernel(const GeometricTree& t1, const GeometricTree& t2,
                        const PathKernelSpec& spec) {
  if (canonical_less(t2, t1)) return all_pairs_kernel(t2, t1, spec);

  if (spec.representation == PathRepresentation::embedded_landmarks) {
    check_embedded(spec, t1, t2);
    const double lambda = embedded_lambda(spec, t1.dim());
    return landmark_set_kernel(all_path_landmarks(t1, spec.landmarks),
                               all_path_landmarks(t2, spec.landmarks), spec.form, lambda);
  }

  const ResolvedNodeKernel k = resolve(spec.node, t1, t2);
  using Buckets = std::map<std::size_t, std::vector<NodePath>>;
  const auto bucket = [](const GeometricTree& t) {
    Buckets b;
    for (NodeIndex i = 0; i < t.size(); ++i) {
      for (NodeIndex j = 0; j < t.size(); ++j) {
        NodePath p = node_path(t, i, j);
        b[p.size()].push_back(std::move(p));
      }
    }
    return b;
  };
  const Buckets b1 = bucket(t1);
  const Buckets b2 = bucket(t2);

  double sum = 0.0;
  for (const auto& [len, paths1] : b1) {
    auto it = b2.find(len);
    if (it == b2.end()) continue;
    for (const NodePath& p : paths1) {
      for (const NodePath& q : it->second) sum += node_path_kernel(t1, p, t2, q, k);
    }
  }
  return sum;
}

PathOccurrences path_occurrences(const GeometricTree& tree) {
  const std::size_t max_len = 2 * tree.height() - 1;
  PathOccurrences occ;
  occ.slots = max_len * (max_len + 1) / 2;
  occ.counts.assign(tree.size() * occ.slots, 0.0);
  for (NodeIndex i = 0; i < tree.size(); ++i) {
    for (NodeIndex j = 0; j < tree.size(); ++j) {
      const NodePath p = node_path(tree, i, j);
      for (std::size_t t = 0; t < p.size(); ++t) {
        occ.counts[p[t] * occ.slots + slot(p.size(), t)] += 1.0;
      }
    }
  }
  return occ;
}

double all_pairs_counted_from(const GeometricTree& t1, const PathOccurrences& o1,
                              const GeometricTree& t2, const PathOccurrences& o2,
                              const ResolvedNodeKernel& k) {
  if (k.form == KernelForm::linear) {
    // sum_{u,w} <c_u,c_w><phi_u,phi_w> = <sum_u c_u (x) phi_u, sum_w c_w (x) phi_w>
    const std::size_t slots = std::min(o1.slots, o2.slots);
    const auto aggregate = [&](const GeometricTree& t, const PathOccurrences& o) {
      const std::size_t n = t.dim();
      const std::size_t d = k.use_attributes ? t.attr_dim() : 1;
      std::vector<double> f(slots * n * d, 0.0);
      for (NodeIndex u = 0; u < t.size(); ++u) {
        const auto c = o.node(u);
        const auto x = t.position(u);
        const auto a = t.attributes(u);
        for (std::size_t s = 0; s < slots; ++s) {
          if (c[s] == 0.0) continue;
          double* dst = f.data() + s * n * d;
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
              dst[i * d + j] += c[s] * x[i] * (k.use_attributes ? a[j] : 1.0);
            }
          }
        }
      }
      return f;
    };
    return dot(aggregate(t1, o1), aggregate(t2, o2));
  }

  double sum = 0.0;
  for (NodeIndex u = 0; u < t1.size(); ++u) {
    const auto cu = o1.node(u);
    double row = 0.0;
    for (NodeIndex w = 0; w < t2.size(); ++w) {
      const double weight = common_prefix_dot(cu, o2.node(w));
      if (weight != 0.0) row += weight * node_kernel(t1, u, t2, w, k);
    }
    sum += row;
  }
  return sum;
}

double all_pairs_node_kernel_counted(const GeometricTree& t1, const GeometricTree& t2,
                                     const NodeKernelSpec& spec) {
  if (canonical_less(t2, t1)) return all_pairs_node_kernel_counted(t2, t1, spec);
  const ResolvedNodeKernel k = resolve(spec, t1, t2);
  return all_pairs_counted_from(t1, path_occurrences(t1), t2, path_occurrences(t2), k);
}

// ---------------------------------------------------------------------------
// Rootpath kernels

double rootpath_kernel_naive(const GeometricTree& t1, const GeometricTree& t2,
                             const PathKernelSpec& spec) {
  if (canonical_less(t2, t1)) return rootpath_kernel_naive(t2, t1, spec);

  if (spec.representation == PathRepresentation::embedded_landmarks) {
    check_embedded(spec, t1, t2);
    const double lambda = embedded_lambda(spec, t1.dim());
    return landmark_set_kernel(rootpath_landmarks(t1, spec.landmarks),
                               rootpath_landmarks(t2, spec.landmarks), spec.form, lambda);
  }

  const ResolvedNodeKernel k = resolve(spec.node, t1, t2);
  const std::vector<NodePath> r1 = rootpaths(t1);
  const std::vector<NodePath> r2 = rootpaths(t2);
  double sum = 0.0;
  for (const NodePath& p : r1) {
    for (const NodePath& q : r2) sum += node_path_kernel(t1, p, t2, q, k);
  }
  return sum;
}

double rootpath_decomposed_from(const GeometricTree& t1, std::span<const DescendantVector> d1,
                                const GeometricTree& t2, std::span<const DescendantVector> d2,
                                const ResolvedNodeKernel& k) {
  const std::size_t h = std::min(t1.height(), t2.height());
  double sum = 0.0;
  for (std::size_t l = 1; l <= h; ++l) {
    for (NodeIndex v1 : t1.level_nodes(l)) {
      for (NodeIndex v2 : t2.level_nodes(l)) {
        const auto weight = common_prefix_dot(d1[v1], d2[v2]);
        sum += static_cast<double>(weight) * node_kernel(t1, v1, t2, v2, k);
      }
    }
  }
  return sum;
}

double rootpath_kernel_decomposed(const GeometricTree& t1, const GeometricTree& t2,
                                  const NodeKernelSpec& spec) {
  if (canonical_less(t2, t1)) return rootpath_kernel_decomposed(t2, t1, spec);
  const ResolvedNodeKernel k = resolve(spec, t1, t2);
  return rootpath_decomposed_from(t1, descendant_vectors(t1), t2, descendant_vectors(t2), k);
}

RootpathFeatures rootpath_features(const GeometricTree& tree, bool use_attributes) {
  const std::size_t n = tree.dim();
  const std::size_t d = use_attributes ? tree.attr_dim() : 1;
  RootpathFeatures f;
  f.block = n * d;
  const std::size_t h = tree.height();
  f.levels.resize(h);

  const std::vector<DescendantVector> delta = descendant_vectors(tree);
  std::vector<double> phi(f.block);
  for (std::size_t l = 1; l <= h; ++l) {
    std::vector<double>& gamma = f.levels[l - 1];
    gamma.assign((h - l + 1) * f.block, 0.0);
    for (NodeIndex v : tree.level_nodes(l)) {
      const auto x = tree.position(v);
      const auto a = tree.attributes(v);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) phi[i * d + j] = x[i] * (use_attributes ? a[j] : 1.0);
      }
      const DescendantVector& dv = delta[v];
      for (std::size_t r = 0; r < dv.size(); ++r) {
        const auto c = static_cast<double>(dv[r]);
        double* dst = gamma.data() + r * f.block;
        for (std::size_t b = 0; b < f.block; ++b) dst[b] += c * phi[b];
      }
    }
  }
  return f;
}

double rootpath_features_inner(const RootpathFeatures& f1, const RootpathFeatures& f2) {
  if (f1.block != f2.block) throw DataError("rootpath features differ in block size");
  const std::size_t h = std::min(f1.levels.size(), f2.levels.size());
  double sum = 0.0;
  for (std::size_t l = 0; l < h; ++l) sum += common_prefix_dot(f1.levels[l], f2.levels[l]);
  return sum;
}

double rootpath_kernel_linear_fast(const GeometricTree& t1, const GeometricTree& t2,
                                   const NodeKernelSpec& spec) {
  if (spec.form != KernelForm::linear) {
    throw SpecError("the Kronecker rootpath kernel requires a linear node kernel");
  }
  if (canonical_less(t2, t1)) return rootpath_kernel_linear_fast(t2, t1, spec);
  const ResolvedNodeKernel k = resolve(spec, t1, t2);
  return rootpath_features_inner(rootpath_features(t1, k.use_attributes),
                                 rootpath_features(t2, k.use_attributes));
}

}  // namespace geokern
