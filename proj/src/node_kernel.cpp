#include "geokern/node_kernel.hpp"

#include <string>

#include "geokern/common.hpp"

namespace geokern {

std::string_view to_string(KernelForm form) {
  return form == KernelForm::linear ? "linear" : "gaussian";
}

KernelForm parse_kernel_form(std::string_view text) {
  if (text == "linear") return KernelForm::linear;
  if (text == "gaussian") return KernelForm::gaussian;
  throw SpecError("unknown kernel form '" + std::string(text) + "' (linear|gaussian)");
}

ResolvedNodeKernel resolve(const NodeKernelSpec& spec, const GeometricTree& t1,
                           const GeometricTree& t2) {
  if (t1.dim() != t2.dim()) {
    throw DataError("trees '" + t1.id() + "' and '" + t2.id() + "' differ in dimension n (" +
                    std::to_string(t1.dim()) + " vs " + std::to_string(t2.dim()) + ")");
  }
  ResolvedNodeKernel k;
  k.form = spec.form;
  k.use_attributes = spec.use_attributes;
  if (spec.use_attributes) {
    if (t1.attr_dim() == 0 || t2.attr_dim() == 0) {
      throw SpecError("attributed node kernel requested but tree '" +
                      (t1.attr_dim() == 0 ? t1.id() : t2.id()) + "' has no attributes");
    }
    if (t1.attr_dim() != t2.attr_dim()) {
      throw DataError("trees '" + t1.id() + "' and '" + t2.id() +
                      "' differ in attribute dimension d");
    }
  }
  k.lambda1 = spec.lambda1.value_or(1.0 / static_cast<double>(t1.dim()));
  k.lambda2 = spec.lambda2.value_or(
      t1.attr_dim() > 0 ? 1.0 / static_cast<double>(t1.attr_dim()) : 1.0);
  if (!(k.lambda1 > 0.0) || !(k.lambda2 > 0.0)) {
    throw SpecError("node kernel widths lambda1, lambda2 must be positive");
  }
  return k;
}

double node_kernel(const GeometricTree& t1, NodeIndex v1, const GeometricTree& t2, NodeIndex v2,
                   const NodeKernelSpec& spec) {
  return node_kernel(t1, v1, t2, v2, resolve(spec, t1, t2));
}

}  // namespace geokern
