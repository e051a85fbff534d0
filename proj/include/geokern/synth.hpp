#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geokern/tree.hpp"
#include "geokern/tree_io.hpp"

namespace geokern {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t n = 3;
  std::size_t d = 1;
  double p_branch = 0.35;  // two children instead of one
  double p_stop = 0.1;     // per non-root node
  std::size_t max_depth = 12;  // number of levels
  double edge_length_decay = 0.8;
  double direction_jitter = 0.5;  // radians
  double attr_base = 1.0;
  double attr_depth_slope = 0.1;
  double attr_noise_sd = 0.2;
};

/// Throws SpecError on out-of-range probabilities, max_depth == 0, n == 0 or
/// negative lengths/angles/noise.
void validate(const GeneratorConfig& cfg);

void to_json(nlohmann::json& j, const GeneratorConfig& cfg);
void from_json(const nlohmann::json& j, GeneratorConfig& cfg);

/// Branching process grown level by level from a root at the origin heading
/// along -e_n. The root never stops. Attributes follow
/// attr_base + depth * attr_depth_slope + N(0, attr_noise_sd^2) per component,
/// depth counted from 0 at the root. Deterministic in (cfg.seed, seed_offset).
GeometricTree generate_tree(const GeneratorConfig& cfg, std::uint64_t seed_offset,
                            std::string id = {});

struct LabeledDataset {
  std::vector<GeometricTree> trees;
  LabelTable labels;
};

/// Class A (label 0) trees use seed offsets 0..size_a-1 of cfg_a, class B
/// (label 1) offsets size_a..size_a+size_b-1 of cfg_b. Ids are tree-NNNNN in
/// that order. Throws SpecError if n or d differ between the configs.
LabeledDataset generate_two_class_population(const GeneratorConfig& cfg_a,
                                             const GeneratorConfig& cfg_b, std::size_t size_a,
                                             std::size_t size_b);

struct Preset {
  GeneratorConfig a;
  GeneratorConfig b;
};

/// "null": identical configs. "attr-shift": attr_depth_slope -1.5 sd for
/// class A and +1.5 sd for class B (sd = attr_noise_sd), with attr_base
/// adjusted so both classes have the same expected per-tree attribute mean;
/// both classes use p_branch 0.5, p_stop 0, max_depth 8.
/// "branch-shift": p_branch 0.05 vs 0.6, both with p_stop 0 and max_depth 8.
Preset make_preset(std::string_view name, std::uint64_t seed);
const std::vector<std::string>& preset_names();

/// Mean over trees of the per-tree mean node depth (root depth 0), estimated
/// from `samples` topologies on a fixed internal stream.
double expected_mean_depth(const GeneratorConfig& cfg, std::size_t samples = 4000);

}  // namespace geokern
