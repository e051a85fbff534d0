#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string_view>

#include "geokern/tree.hpp"

namespace geokern {

enum class KernelForm { linear, gaussian };

std::string_view to_string(KernelForm form);
KernelForm parse_kernel_form(std::string_view text);

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Kernel on individual nodes. Unset widths default to 1/n and 1/d.
struct NodeKernelSpec {
  KernelForm form = KernelForm::gaussian;
  bool use_attributes = false;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
};

/// NodeKernelSpec with defaults filled in and checked against a tree pair.
struct ResolvedNodeKernel {
  KernelForm form = KernelForm::gaussian;
  bool use_attributes = false;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};

/// Throws DataError on dimension mismatch and SpecError on invalid widths or
/// attributes requested on unattributed trees.
ResolvedNodeKernel resolve(const NodeKernelSpec& spec, const GeometricTree& t1,
                           const GeometricTree& t2);

inline double node_kernel(const GeometricTree& t1, NodeIndex v1, const GeometricTree& t2,
                          NodeIndex v2, const ResolvedNodeKernel& k) {
  if (k.form == KernelForm::linear) {
    double value = dot(t1.position(v1), t2.position(v2));
    if (k.use_attributes) value *= dot(t1.attributes(v1), t2.attributes(v2));
    return value;
  }
  double value = std::exp(-k.lambda1 * squared_distance(t1.position(v1), t2.position(v2)));
  if (k.use_attributes) {
    value *= std::exp(-k.lambda2 * squared_distance(t1.attributes(v1), t2.attributes(v2)));
  }
  return value;
}

double node_kernel(const GeometricTree& t1, NodeIndex v1, const GeometricTree& t2, NodeIndex v2,
                   const NodeKernelSpec& spec);

}  // namespace geokern
