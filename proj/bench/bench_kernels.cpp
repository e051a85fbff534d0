// Serial vs OpenMP Gram assembly, and naive vs decomposed vs Kronecker rootpath.
#include <benchmark/benchmark.h>

#include <vector>

#include "geokern/gram.hpp"
#include "geokern/parallel.hpp"
#include "geokern/scaling.hpp"
#include "geokern/synth.hpp"

using namespace geokern;

namespace {

KernelSpec spec_of(KernelKind kind, KernelForm form) {
  KernelSpec s;
  s.kind = kind;
  s.form = form;
  return s;
}

const std::vector<GeometricTree>& population() {
  static const std::vector<GeometricTree> trees = [] {
    GeneratorConfig cfg;
    cfg.seed = 1;
    std::vector<GeometricTree> out;
    for (std::uint64_t i = 0; i < 40; ++i) out.push_back(generate_tree(cfg, i));
    return out;
  }();
  return trees;
}

const KernelSpec kGramSpec = spec_of(KernelKind::rootpath_node, KernelForm::gaussian);

void BM_AssembleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(assemble_serial(population(), kGramSpec));
}

void BM_AssembleParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(population(), kGramSpec, threads));
}

template <KernelKind Kind>
void BM_Rootpath(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto t1 = balanced_binary_tree(size, 3, 0, 1);
  const auto t2 = balanced_binary_tree(size, 3, 0, 2);
  const auto spec = spec_of(Kind, KernelForm::linear);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_kernel(t1, t2, spec));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)
    ->DenseRange(1, std::max(available_threads(), 2))
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rootpath<KernelKind::rootpath_node_naive>)
    ->RangeMultiplier(2)->Range(64, 1024)->Complexity();
BENCHMARK(BM_Rootpath<KernelKind::rootpath_node>)
    ->RangeMultiplier(2)->Range(64, 1024)->Complexity();
BENCHMARK(BM_Rootpath<KernelKind::rootpath_node_linear_fast>)
    ->RangeMultiplier(2)->Range(64, 1024)->Complexity();

BENCHMARK_MAIN();
