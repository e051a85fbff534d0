#include "geokern/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "geokern/common.hpp"
#include "geokern/rng.hpp"

namespace geokern {

GeometricTree balanced_binary_tree(std::size_t size, std::size_t n, std::uint64_t seed,
                                   std::uint64_t stream, std::string id) {
  if (size == 0) throw SpecError("balanced tree needs at least one node");
  CounterRng rng(seed, stream);
  std::vector<Node> nodes(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (i > 0) nodes[i].parent = (i - 1) / 2;
    nodes[i].x.resize(n);
    for (double& c : nodes[i].x) c = rng.uniform(-1.0, 1.0);
  }
  return GeometricTree::build(std::move(id), n, 0, std::move(nodes));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

ScalingResult measure_scaling(const KernelSpec& spec, std::span<const std::size_t> sizes,
                              std::size_t repeats, std::size_t n, std::uint64_t seed,
                              double min_time) {
  validate(spec);
  if (repeats == 0) throw SpecError("scaling: repeats must be positive");
  ScalingResult out;
  std::vector<double> xs, ys;
  for (std::size_t size : sizes) {
    const GeometricTree t1 = balanced_binary_tree(size, n, seed, 2 * size, "bench-a");
    const GeometricTree t2 = balanced_binary_tree(size, n, seed, 2 * size + 1, "bench-b");
    std::vector<double> per_call;
    volatile double sink = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
      std::size_t calls = 0;
      double elapsed = 0.0;
      const auto start = std::chrono::steady_clock::now();
      do {
        sink = sink + evaluate_kernel(t1, t2, spec);
        ++calls;
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } while (elapsed < min_time);
      per_call.push_back(elapsed / static_cast<double>(calls));
    }
    std::ranges::sort(per_call);
    const std::size_t mid = per_call.size() / 2;
    const double median =
        per_call.size() % 2 == 1 ? per_call[mid] : 0.5 * (per_call[mid - 1] + per_call[mid]);
    out.rows.push_back({t1.size(), t1.height(), median});
    xs.push_back(static_cast<double>(t1.size()));
    ys.push_back(median);
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

}  // namespace geokern
