#include "geokern/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

#include "geokern/common.hpp"
#include "geokern/node_kernel.hpp"
#include "geokern/rng.hpp"

namespace geokern {

namespace {

constexpr std::uint64_t kCalibrationSeed = 0x5eedca11b2a7e000ULL;

using Vec = std::vector<double>;

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

// Random unit vector orthogonal to unit vector `dir`; empty when n == 1.
Vec random_perpendicular(const Vec& dir, CounterRng& rng) {
  const std::size_t n = dir.size();
  if (n < 2) return {};
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec u(n);
    for (double& c : u) c = rng.normal();
    const double proj = dot(u, dir);
    for (std::size_t k = 0; k < n; ++k) u[k] -= proj * dir[k];
    const double len = norm(u);
    if (len > 1e-8) {
      for (double& c : u) c /= len;
      return u;
    }
  }
  // Degenerate draws only; fall back to the axis least aligned with dir.
  std::size_t axis = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(dir[k]) < std::abs(dir[axis])) axis = k;
  }
  Vec u(n, 0.0);
  u[axis] = 1.0;
  const double proj = dot(u, dir);
  for (std::size_t k = 0; k < n; ++k) u[k] -= proj * dir[k];
  const double len = norm(u);
  for (double& c : u) c /= len;
  return u;
}

Vec tilt(const Vec& dir, const Vec& perp, double angle) {
  if (perp.empty()) return dir;
  Vec out(dir.size());
  for (std::size_t k = 0; k < dir.size(); ++k) {
    out[k] = std::cos(angle) * dir[k] + std::sin(angle) * perp[k];
  }
  const double len = norm(out);
  for (double& c : out) c /= len;
  return out;
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw SpecError(std::string("generator: ") + name + " must lie in [0, 1]");
  }
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  check_probability(cfg.p_branch, "p_branch");
  check_probability(cfg.p_stop, "p_stop");
  if (cfg.max_depth < 1) throw SpecError("generator: max_depth must be at least 1");
  if (cfg.n < 1) throw SpecError("generator: n must be at least 1");
  if (!(cfg.edge_length_decay > 0.0)) throw SpecError("generator: edge_length_decay must be positive");
  if (!(cfg.direction_jitter >= 0.0)) throw SpecError("generator: direction_jitter must be non-negative");
  if (!(cfg.attr_noise_sd >= 0.0)) throw SpecError("generator: attr_noise_sd must be non-negative");
  if (!std::isfinite(cfg.attr_base) || !std::isfinite(cfg.attr_depth_slope)) {
    throw SpecError("generator: attribute parameters must be finite");
  }
}

void to_json(nlohmann::json& j, const GeneratorConfig& cfg) {
  j = nlohmann::json{{"seed", cfg.seed},
                     {"n", cfg.n},
                     {"d", cfg.d},
                     {"p_branch", cfg.p_branch},
                     {"p_stop", cfg.p_stop},
                     {"max_depth", cfg.max_depth},
                     {"edge_length_decay", cfg.edge_length_decay},
                     {"direction_jitter", cfg.direction_jitter},
                     {"attr_base", cfg.attr_base},
                     {"attr_depth_slope", cfg.attr_depth_slope},
                     {"attr_noise_sd", cfg.attr_noise_sd}};
}

void from_json(const nlohmann::json& j, GeneratorConfig& cfg) {
  cfg = GeneratorConfig{};
  if (!j.is_object()) throw SpecError("generator config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "n") cfg.n = value.get<std::size_t>();
      else if (key == "d") cfg.d = value.get<std::size_t>();
      else if (key == "p_branch") cfg.p_branch = value.get<double>();
      else if (key == "p_stop") cfg.p_stop = value.get<double>();
      else if (key == "max_depth") cfg.max_depth = value.get<std::size_t>();
      else if (key == "edge_length_decay") cfg.edge_length_decay = value.get<double>();
      else if (key == "direction_jitter") cfg.direction_jitter = value.get<double>();
      else if (key == "attr_base") cfg.attr_base = value.get<double>();
      else if (key == "attr_depth_slope") cfg.attr_depth_slope = value.get<double>();
      else if (key == "attr_noise_sd") cfg.attr_noise_sd = value.get<double>();
      else throw SpecError("generator config: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw SpecError("generator config: bad value for '" + key + "'");
    }
  }
}

GeometricTree generate_tree(const GeneratorConfig& cfg, std::uint64_t seed_offset,
                            std::string id) {
  validate(cfg);
  CounterRng rng(cfg.seed, seed_offset);

  struct Pending {
    std::size_t index;
    std::size_t level;  // 1-based
    Vec dir;
  };

  std::vector<Node> nodes;
  Vec heading(cfg.n, 0.0);
  heading.back() = -1.0;
  const auto attributes = [&](std::size_t level) {
    Vec a(cfg.d);
    const double depth = static_cast<double>(level - 1);
    for (double& c : a) {
      c = cfg.attr_base + depth * cfg.attr_depth_slope + cfg.attr_noise_sd * rng.normal();
    }
    return a;
  };

  nodes.push_back({std::nullopt, Vec(cfg.n, 0.0), attributes(1)});
  std::deque<Pending> queue{{0, 1, heading}};
  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();
    if (cur.level >= cfg.max_depth) continue;
    if (cur.level > 1 && rng.bernoulli(cfg.p_stop)) continue;

    const int children = rng.bernoulli(cfg.p_branch) ? 2 : 1;
    const double length = std::pow(cfg.edge_length_decay, static_cast<double>(cur.level - 1));
    const Vec perp = random_perpendicular(cur.dir, rng);
    for (int c = 0; c < children; ++c) {
      // Sibling branches lean to opposite sides of the parent heading.
      Vec side = perp;
      if (c == 1) {
        for (double& v : side) v = -v;
      }
      const double angle = rng.uniform(0.0, cfg.direction_jitter);
      Vec dir = tilt(cur.dir, side, angle);
      Vec x = nodes[cur.index].x;
      for (std::size_t k = 0; k < cfg.n; ++k) x[k] += length * dir[k];
      nodes.push_back({cur.index, std::move(x), attributes(cur.level + 1)});
      queue.push_back({nodes.size() - 1, cur.level + 1, std::move(dir)});
    }
  }
  return GeometricTree::build(std::move(id), cfg.n, cfg.d, std::move(nodes));
}

LabeledDataset generate_two_class_population(const GeneratorConfig& cfg_a,
                                             const GeneratorConfig& cfg_b, std::size_t size_a,
                                             std::size_t size_b) {
  if (cfg_a.n != cfg_b.n || cfg_a.d != cfg_b.d) {
    throw SpecError("class configs disagree in n or d");
  }
  validate(cfg_a);
  validate(cfg_b);
  LabeledDataset out;
  out.trees.reserve(size_a + size_b);
  char id[32];
  for (std::size_t k = 0; k < size_a + size_b; ++k) {
    std::snprintf(id, sizeof id, "tree-%05zu", k);
    const bool is_a = k < size_a;
    out.trees.push_back(generate_tree(is_a ? cfg_a : cfg_b, k, id));
    out.labels.emplace_back(id, is_a ? 0 : 1);
  }
  return out;
}

double expected_mean_depth(const GeneratorConfig& cfg, std::size_t samples) {
  GeneratorConfig c = cfg;
  c.seed = kCalibrationSeed;
  c.d = 0;
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const GeometricTree t = generate_tree(c, s);
    double depth = 0.0;
    for (NodeIndex v = 0; v < t.size(); ++v) depth += static_cast<double>(t.level(v) - 1);
    total += depth / static_cast<double>(t.size());
  }
  return samples == 0 ? 0.0 : total / static_cast<double>(samples);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"null", "attr-shift", "branch-shift"};
  return names;
}

Preset make_preset(std::string_view name, std::uint64_t seed) {
  Preset p;
  p.a.seed = seed;
  p.b.seed = seed;
  if (name == "null") return p;
  if (name == "attr-shift") {
    // Slopes of opposite sign and equal size, bases pinned at the expected
    // mean depth. Without early stopping the per-tree mean depth barely
    // varies, so per-tree attribute means carry almost no class signal.
    for (GeneratorConfig* c : {&p.a, &p.b}) {
      c->p_branch = 0.5;
      c->p_stop = 0.0;
      c->max_depth = 8;
    }
    const double half = 1.5 * p.a.attr_noise_sd;
    const double pivot = expected_mean_depth(p.a);
    p.a.attr_depth_slope = -half;
    p.b.attr_depth_slope = half;
    p.a.attr_base += half * pivot;
    p.b.attr_base -= half * pivot;
    return p;
  }
  if (name == "branch-shift") {
    // No early stopping keeps node counts concentrated, which the
    // delta-like Gaussian branch-count kernel needs.
    for (GeneratorConfig* c : {&p.a, &p.b}) {
      c->p_stop = 0.0;
      c->max_depth = 8;
    }
    p.a.p_branch = 0.05;
    p.b.p_branch = 0.6;
    return p;
  }
  throw SpecError("unknown preset '" + std::string(name) + "'");
}

}  // namespace geokern
