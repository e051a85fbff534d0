#include "geokern/aux_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "geokern/common.hpp"

namespace geokern {

namespace {

void require_attribute(const GeometricTree& t, std::size_t component, const char* kernel) {
  if (t.attr_dim() == 0) {
    throw SpecError(std::string(kernel) + " kernel requires attributes; tree '" + t.id() +
                    "' has d = 0");
  }
  if (component >= t.attr_dim()) {
    throw SpecError(std::string(kernel) + " kernel: attribute component " +
                    std::to_string(component) + " out of range for tree '" + t.id() + "'");
  }
}

}  // namespace

double pointcloud_kernel(const GeometricTree& t1, const GeometricTree& t2,
                         std::optional<double> lambda1, std::optional<double> lambda2) {
  if (canonical_less(t2, t1)) return pointcloud_kernel(t2, t1, lambda1, lambda2);
  if (t1.dim() != t2.dim()) {
    throw DataError("trees '" + t1.id() + "' and '" + t2.id() + "' differ in dimension n");
  }
  if (t1.attr_dim() != t2.attr_dim()) {
    throw DataError("trees '" + t1.id() + "' and '" + t2.id() +
                    "' differ in attribute dimension d");
  }
  for (const GeometricTree* t : {&t1, &t2}) {
    if (t->size() < 2) {
      warn("pointcloud kernel: tree '" + t->id() + "' has no edges; kernel value is 0");
      return 0.0;
    }
  }
  const bool attributed = t1.attr_dim() > 0;
  const double l1 = lambda1.value_or(1.0 / static_cast<double>(t1.dim()));
  const double l2 =
      lambda2.value_or(attributed ? 1.0 / static_cast<double>(t1.attr_dim()) : 1.0);
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw SpecError("pointcloud widths must be positive");

  double sum = 0.0;
  for (NodeIndex e1 = 1; e1 < t1.size(); ++e1) {
    double row = 0.0;
    for (NodeIndex e2 = 1; e2 < t2.size(); ++e2) {
      double k = std::exp(-l1 * squared_distance(t1.position(e1), t2.position(e2)));
      if (attributed) {
        k *= std::exp(-l2 * squared_distance(t1.attributes(e1), t2.attributes(e2)));
      }
      row += k;
    }
    sum += row;
  }
  return sum;
}

double attribute_mean(const GeometricTree& tree, std::size_t component) {
  require_attribute(tree, component, "average-attribute");
  double sum = 0.0;
  for (NodeIndex v = 0; v < tree.size(); ++v) sum += tree.attributes(v)[component];
  return sum / static_cast<double>(tree.size());
}

double average_attribute_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                std::size_t component, KernelForm form) {
  const double m1 = attribute_mean(t1, component);
  const double m2 = attribute_mean(t2, component);
  if (form == KernelForm::linear) return m1 * m2;
  return std::exp(-(m1 - m2) * (m1 - m2));
}

std::vector<double> generation_means(const GeometricTree& tree, std::size_t component,
                                     std::size_t gen_lo, std::size_t gen_hi) {
  require_attribute(tree, component, "generation-average");
  if (gen_hi < gen_lo) throw SpecError("generation range is empty");
  std::vector<double> means(gen_hi - gen_lo + 1, 0.0);
  for (std::size_t g = gen_lo; g <= gen_hi; ++g) {
    auto nodes = tree.level_nodes(g + 1);
    if (nodes.empty()) {
      warn("tree '" + tree.id() + "' has no nodes in generation " + std::to_string(g) +
           "; using mean 0");
      continue;
    }
    double sum = 0.0;
    for (NodeIndex v : nodes) sum += tree.attributes(v)[component];
    means[g - gen_lo] = sum / static_cast<double>(nodes.size());
  }
  return means;
}

double generation_average_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                 std::size_t gen_lo, std::size_t gen_hi, std::size_t component,
                                 KernelForm form) {
  const auto u1 = generation_means(t1, component, gen_lo, gen_hi);
  const auto u2 = generation_means(t2, component, gen_lo, gen_hi);
  if (form == KernelForm::linear) return dot(u1, u2);
  return std::exp(-squared_distance(u1, u2));
}

BranchcountValues branchcount_kernels(const GeometricTree& t1, const GeometricTree& t2) {
  const auto s1 = static_cast<double>(t1.size());
  const auto s2 = static_cast<double>(t2.size());
  return {s1 * s2, std::exp(-(s1 - s2) * (s1 - s2))};
}

std::vector<std::int64_t> path_length_histogram(const GeometricTree& tree) {
  const std::size_t count = tree.size();
  std::vector<std::int64_t> hist(1, 0);
  std::vector<std::size_t> dist(count);
  std::vector<NodeIndex> queue;
  queue.reserve(count);
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  for (NodeIndex s = 0; s < count; ++s) {
    std::ranges::fill(dist, unseen);
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeIndex u = queue[head];
      if (dist[u] >= hist.size()) hist.resize(dist[u] + 1, 0);
      ++hist[dist[u]];
      const auto visit = [&](NodeIndex w) {
        if (dist[w] == unseen) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      };
      if (auto p = tree.parent(u)) visit(*p);
      for (NodeIndex c : tree.children(u)) visit(c);
    }
  }
  return hist;
}

double shortest_path_from(std::span<const std::int64_t> h1, std::span<const std::int64_t> h2,
                          LengthKernel length_kernel) {
  if (length_kernel == LengthKernel::delta) {
    std::int64_t sum = 0;
    for (std::size_t l = 0; l < std::min(h1.size(), h2.size()); ++l) sum += h1[l] * h2[l];
    return static_cast<double>(sum);
  }
  // sum_{p,q} len(p) len(q) factorizes into the product of total lengths.
  std::int64_t total1 = 0;
  std::int64_t total2 = 0;
  for (std::size_t l = 0; l < h1.size(); ++l) total1 += static_cast<std::int64_t>(l) * h1[l];
  for (std::size_t l = 0; l < h2.size(); ++l) total2 += static_cast<std::int64_t>(l) * h2[l];
  return static_cast<double>(total1) * static_cast<double>(total2);
}

double shortest_path_kernel(const GeometricTree& t1, const GeometricTree& t2,
                            LengthKernel length_kernel) {
  return shortest_path_from(path_length_histogram(t1), path_length_histogram(t2), length_kernel);
}

std::vector<WLFeatures> weisfeiler_lehman_features(std::span<const GeometricTree> trees,
                                                   const WLConfig& cfg) {
  std::vector<WLFeatures> features(trees.size());
  std::vector<std::vector<std::int64_t>> labels(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) {
    labels[i].resize(trees[i].size());
    for (NodeIndex v = 0; v < trees[i].size(); ++v) {
      labels[i][v] = static_cast<std::int64_t>(trees[i].degree(v));
    }
  }

  const auto record_round = [&] {
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::map<std::int64_t, std::int64_t> hist;
      for (std::int64_t l : labels[i]) ++hist[l];
      features[i].rounds.emplace_back(hist.begin(), hist.end());
    }
  };
  record_round();

  std::vector<std::int64_t> signature;
  for (std::size_t round = 1; round <= cfg.iterations; ++round) {
    std::map<std::vector<std::int64_t>, std::int64_t> dictionary;
    std::vector<std::vector<std::int64_t>> next(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
      const GeometricTree& t = trees[i];
      next[i].resize(t.size());
      for (NodeIndex v = 0; v < t.size(); ++v) {
        signature.clear();
        if (auto p = t.parent(v)) signature.push_back(labels[i][*p]);
        for (NodeIndex c : t.children(v)) signature.push_back(labels[i][c]);
        std::ranges::sort(signature);
        signature.insert(signature.begin(), labels[i][v]);
        auto [it, inserted] =
            dictionary.try_emplace(signature, static_cast<std::int64_t>(dictionary.size()));
        next[i][v] = it->second;
      }
    }
    labels = std::move(next);
    record_round();
  }
  return features;
}

double weisfeiler_lehman_from(const WLFeatures& f1, const WLFeatures& f2) {
  std::int64_t sum = 0;
  const std::size_t rounds = std::min(f1.rounds.size(), f2.rounds.size());
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto& a = f1.rounds[r];
    const auto& b = f2.rounds[r];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (b[j].first < a[i].first) {
        ++j;
      } else {
        sum += a[i++].second * b[j++].second;
      }
    }
  }
  return static_cast<double>(sum);
}

double weisfeiler_lehman_kernel(const GeometricTree& t1, const GeometricTree& t2,
                                const WLConfig& cfg) {
  const std::vector<GeometricTree> pair{t1, t2};
  const auto f = weisfeiler_lehman_features(pair, cfg);
  return weisfeiler_lehman_from(f[0], f[1]);
}

}  // namespace geokern
