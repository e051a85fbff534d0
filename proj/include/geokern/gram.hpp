#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geokern/kernel_spec.hpp"
#include "geokern/tree.hpp"

namespace geokern {

struct GramMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;
  KernelSpec spec;
  bool normalized = false;

  std::size_t size() const { return ids.size(); }
};

/// Upper triangle evaluated on an OpenMP worker pool and mirrored. Each entry
/// is computed by exactly one worker with a fixed summation order, so the
/// result is bitwise independent of `threads`.
GramMatrix assemble(std::span<const GeometricTree> trees, const KernelSpec& spec, int threads);

/// Single-threaded reference: evaluate_kernel on every pair i <= j.
GramMatrix assemble_serial(std::span<const GeometricTree> trees, const KernelSpec& spec);

/// K(i,j) / sqrt(K(i,i) K(j,j)). Throws SpecError for scalar-linear kernels and
/// DataError naming the tree when a diagonal entry is not strictly positive.
GramMatrix normalize(const GramMatrix& gram);

struct PsdReport {
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool is_psd = false;
};

/// Full symmetric eigendecomposition. PSD iff min_eig >= -tol * max(|max_eig|, 1).
/// Throws DataError if the matrix is asymmetric beyond 1e-9.
PsdReport psd_check(const Eigen::MatrixXd& values, double tol = 1e-8);
PsdReport psd_check(const GramMatrix& gram, double tol = 1e-8);

/// Entrywise sum; ids must match in order.
GramMatrix combine(const GramMatrix& a, const GramMatrix& b);

/// CSV with header `id,<id1>,...` and rows `<idK>,v,...`, 17 significant digits.
std::string gram_to_csv(const GramMatrix& gram);
GramMatrix gram_from_csv(std::string_view text);

/// Sidecar JSON with the kernel spec, normalization flag and version.
std::string gram_sidecar_json(const GramMatrix& gram);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the CSV and its sidecar.
void write_gram(const std::filesystem::path& csv_path, const GramMatrix& gram);
/// Reads the CSV and, when present, the sidecar.
GramMatrix read_gram(const std::filesystem::path& csv_path);

}  // namespace geokern
