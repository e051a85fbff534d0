#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geokern/aux_kernels.hpp"
#include "geokern/node_kernel.hpp"
#include "geokern/path_kernels.hpp"
#include "geokern/tree.hpp"

namespace geokern {

enum class KernelKind {
  all_pairs_embedded,
  rootpath_embedded,
  all_pairs_node,
  rootpath_node_naive,
  rootpath_node,
  rootpath_node_linear_fast,
  pointcloud,
  aaw,
  agaw,
  lbc,
  gbc,
  sp,
  wl,
};

std::string_view kernel_name(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);
const std::vector<std::string>& kernel_names();

/// Full configuration of any kernel in the library. Fields that do not apply
/// to `kind` are ignored. Unset widths take the inverse-dimension defaults.
struct KernelSpec {
  KernelKind kind = KernelKind::rootpath_node;
  KernelForm form = KernelForm::gaussian;
  bool use_attributes = false;
  std::optional<double> lambda1;  // geometric node/edge width
  std::optional<double> lambda2;  // attribute width
  std::optional<double> lambda;   // landmark-path width
  std::size_t landmarks = kDefaultLandmarks;
  std::size_t wl_iterations = 10;
  std::size_t attribute_index = 0;
  std::size_t gen_lo = 3;
  std::size_t gen_hi = 6;
  LengthKernel sp_length = LengthKernel::delta;

  NodeKernelSpec node_spec() const { return {form, use_attributes, lambda1, lambda2}; }
  PathKernelSpec path_spec() const;
};

/// Throws SpecError for inconsistent settings, e.g. a Gaussian form for the
/// Kronecker rootpath kernel.
void validate(const KernelSpec& spec);

/// Kernels whose feature space is one-dimensional and linear (LBC and the
/// linear global average); normalizing them gives the all-ones matrix.
bool is_scalar_linear(const KernelSpec& spec);

void to_json(nlohmann::json& j, const KernelSpec& spec);
void from_json(const nlohmann::json& j, KernelSpec& spec);

/// Throws DataError if the trees disagree in n or d, SpecError if the kernel
/// needs attributes the trees do not carry.
void check_compatible(std::span<const GeometricTree> trees, const KernelSpec& spec);

/// Evaluates one kernel value directly from two trees.
double evaluate_kernel(const GeometricTree& t1, const GeometricTree& t2, const KernelSpec& spec);

/// A kernel bound to a tree population with all per-tree precomputation done
/// up front. operator() is const and safe to call concurrently, and returns
/// exactly evaluate_kernel(trees[i], trees[j], spec).
class PreparedKernel {
 public:
  PreparedKernel(std::span<const GeometricTree> trees, const KernelSpec& spec, int threads = 1);
  ~PreparedKernel();
  PreparedKernel(PreparedKernel&&) noexcept;
  PreparedKernel& operator=(PreparedKernel&&) noexcept;

  double operator()(std::size_t i, std::size_t j) const;
  std::size_t size() const { return rank_.size(); }

  class Impl;

 private:
  std::vector<std::size_t> rank_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace geokern
