// geokern command-line front end.
//
// Exit codes: 0 success, 1 data error, 2 usage or kernel-spec error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geokern/common.hpp"
#include "geokern/gram.hpp"
#include "geokern/kernel_spec.hpp"
#include "geokern/parallel.hpp"
#include "geokern/path_kernels.hpp"
#include "geokern/scaling.hpp"
#include "geokern/stats.hpp"
#include "geokern/synth.hpp"
#include "geokern/tree_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace geokern;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- manifests -------------------------------------------------------------

std::string fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_input(const fs::path& path) {
  if (!fs::is_directory(path)) return fnv1a(read_file(path));
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::ranges::sort(files);
  std::string all;
  for (const auto& f : files) all += f.filename().string() + '\n' + read_file(f);
  return fnv1a(all);
}

struct Manifest {
  std::string command;
  std::vector<std::string> arguments;
  json kernel_spec = nullptr;
  json inputs = json::object();
  json seed = nullptr;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void add_input(const fs::path& p) { inputs[p.string()] = hash_input(p); }

  void write(const fs::path& path) const {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["command"] = command;
    j["arguments"] = arguments;
    j["kernel_spec"] = kernel_spec;
    j["input_hashes"] = inputs;
    j["seed"] = seed;
    j["software_version"] = std::string(kVersion);
    j["duration_seconds"] = secs;
    write_file(path, j.dump(2) + "\n");
  }
};

fs::path manifest_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

// ---- --config expansion ----------------------------------------------------

// Flags in a JSON config are spliced into argv unless given explicitly.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!config) return args;

  json j;
  try {
    j = json::parse(read_file(*config));
  } catch (const json::exception& e) {
    throw UsageError("config " + *config + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + *config + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    std::ranges::replace(flag, '_', '-');
    const bool given = std::ranges::any_of(args, [&](const std::string& a) {
      return a == flag || a.starts_with(flag + "=");
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      args.push_back(flag);
      args.push_back(joined);
    } else if (!value.is_null()) {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return args;
}

// ---- shared helpers --------------------------------------------------------

struct SpecFlags {
  std::string spec_file;
  std::string kernel = "rootpath-node";
  std::string form = "gaussian";
  bool use_attributes = false;
  double lambda1 = 0, lambda2 = 0, lambda = 0;
  std::size_t landmarks = kDefaultLandmarks;
  std::size_t wl_iterations = 10;
  std::size_t attribute_index = 0;
  std::size_t gen_lo = 3, gen_hi = 6;
  std::string sp_length = "delta";
  std::map<std::string, CLI::Option*> opts;

  void add(CLI::App* cmd) {
    opts["spec"] = cmd->add_option("--spec", spec_file, "Kernel spec JSON (flags override it)");
    opts["kernel"] = cmd->add_option("--kernel", kernel, "Kernel name")->capture_default_str();
    opts["form"] = cmd->add_option("--form", form, "Node kernel form: linear|gaussian")
                       ->capture_default_str();
    opts["use_attributes"] = cmd->add_flag("--use-attributes", use_attributes,
                                           "Include node attributes in node kernels");
    opts["lambda1"] = cmd->add_option("--lambda1", lambda1, "Geometric width (default 1/n)");
    opts["lambda2"] = cmd->add_option("--lambda2", lambda2, "Attribute width (default 1/d)");
    opts["lambda"] = cmd->add_option("--lambda", lambda, "Landmark path width (default 1/(m n))");
    opts["landmarks"] = cmd->add_option("--landmarks", landmarks, "Landmarks per embedded path")
                            ->capture_default_str();
    opts["wl_iterations"] = cmd->add_option("--wl-iterations", wl_iterations, "WL rounds")
                                ->capture_default_str();
    opts["attribute_index"] =
        cmd->add_option("--attribute-index", attribute_index, "Attribute component for aaw/agaw")
            ->capture_default_str();
    opts["gen_lo"] = cmd->add_option("--gen-lo", gen_lo, "First generation for agaw")
                         ->capture_default_str();
    opts["gen_hi"] = cmd->add_option("--gen-hi", gen_hi, "Last generation for agaw")
                         ->capture_default_str();
    opts["sp_length"] = cmd->add_option("--sp-length", sp_length,
                                        "Shortest-path length kernel: delta|linear")
                            ->capture_default_str();
  }

  bool given(const char* name) const { return opts.at(name)->count() > 0; }

  KernelSpec resolve() const {
    KernelSpec s;
    if (!spec_file.empty()) {
      try {
        s = json::parse(read_file(spec_file)).get<KernelSpec>();
      } catch (const json::exception& e) {
        throw SpecError("kernel spec " + spec_file + ": " + e.what());
      }
    }
    if (spec_file.empty() || given("kernel")) s.kind = parse_kernel_kind(kernel);
    if (spec_file.empty() || given("form")) s.form = parse_kernel_form(form);
    if (given("use_attributes")) s.use_attributes = use_attributes;
    if (given("lambda1")) s.lambda1 = lambda1;
    if (given("lambda2")) s.lambda2 = lambda2;
    if (given("lambda")) s.lambda = lambda;
    if (given("landmarks")) s.landmarks = landmarks;
    if (given("wl_iterations")) s.wl_iterations = wl_iterations;
    if (given("attribute_index")) s.attribute_index = attribute_index;
    if (given("gen_lo")) s.gen_lo = gen_lo;
    if (given("gen_hi")) s.gen_hi = gen_hi;
    if (given("sp_length")) {
      if (sp_length != "delta" && sp_length != "linear") {
        throw SpecError("--sp-length must be delta or linear");
      }
      s.sp_length = sp_length == "delta" ? LengthKernel::delta : LengthKernel::linear;
    }
    validate(s);
    return s;
  }
};

// Splits a Gram's rows into label-0 and label-1 index sets.
std::pair<std::vector<std::size_t>, std::vector<int>> align_labels(const GramMatrix& gram,
                                                                   const LabelTable& labels) {
  std::map<std::string, int> by_id;
  for (const auto& [id, label] : labels) by_id[id] = label;
  std::vector<int> out;
  out.reserve(gram.ids.size());
  for (const auto& id : gram.ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("no label for tree '" + id + "'");
    out.push_back(it->second);
  }
  if (by_id.size() != gram.ids.size()) {
    throw DataError("label file lists trees that are not in the Gram matrix");
  }
  std::vector<std::size_t> idx(gram.ids.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return {idx, out};
}

json spec_ref(const std::string& gram_path, const GramMatrix& gram) {
  json j;
  j["gram"] = gram_path;
  const fs::path meta = sidecar_path(gram_path);
  if (fs::exists(meta)) {
    j["sidecar"] = meta.string();
    j["kernel_spec"] = gram.spec;
    j["normalized"] = gram.normalized;
  } else {
    j["sidecar"] = nullptr;
  }
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- commands --------------------------------------------------------------

struct GenArgs {
  std::string preset = "null";
  std::size_t size = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string generator;
};

int run_gen(const GenArgs& a, Manifest& m) {
  Preset p;
  if (!a.generator.empty()) {
    json j;
    try {
      j = json::parse(read_file(a.generator));
    } catch (const json::exception& e) {
      throw SpecError("generator config " + a.generator + ": " + e.what());
    }
    if (j.contains("a") || j.contains("b")) {
      p.a = j.value("a", json::object()).get<GeneratorConfig>();
      p.b = j.value("b", json::object()).get<GeneratorConfig>();
    } else {
      p.a = p.b = j.get<GeneratorConfig>();
    }
    p.a.seed = p.b.seed = a.seed;
    m.add_input(a.generator);
  } else {
    p = make_preset(a.preset, a.seed);
  }
  if (a.size < 2) throw SpecError("--size must be at least 2");
  const std::size_t size_a = a.size / 2;
  const auto ds = generate_two_class_population(p.a, p.b, size_a, a.size - size_a);
  const fs::path dir(a.out);
  write_dataset(dir / "trees.json", ds.trees);
  write_file(dir / "labels.csv", serialize_labels(ds.labels));
  m.seed = a.seed;
  m.write(dir / "manifest.json");
  return 0;
}

struct KernelArgs {
  std::string data;
  std::string out;
  int threads = available_threads();
  bool normalize = false;
  bool check_against_naive = false;
};

// Reference Gram for --check-against-naive.
GramMatrix naive_reference(std::span<const GeometricTree> trees, const KernelSpec& spec) {
  switch (spec.kind) {
    case KernelKind::rootpath_node:
    case KernelKind::rootpath_node_linear_fast: {
      KernelSpec naive = spec;
      naive.kind = KernelKind::rootpath_node_naive;
      return assemble_serial(trees, naive);
    }
    case KernelKind::all_pairs_node: {
      GramMatrix g = assemble_serial(trees, spec);
      const PathKernelSpec ps = spec.path_spec();
      for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = i; j < trees.size(); ++j) {
          const double v = all_pairs_kernel(trees[i], trees[j], ps);
          g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
          g.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
      }
      return g;
    }
    default:
      throw SpecError("--check-against-naive has no reference for kernel '" +
                      std::string(kernel_name(spec.kind)) + "'");
  }
}

int run_kernel(const KernelArgs& a, const SpecFlags& flags, Manifest& m) {
  const KernelSpec spec = flags.resolve();
  m.kernel_spec = spec;
  const auto trees = read_dataset(a.data);
  m.add_input(a.data);
  if (!flags.spec_file.empty()) m.add_input(flags.spec_file);

  GramMatrix gram = assemble(trees, spec, a.threads);
  int status = 0;
  if (a.check_against_naive) {
    const GramMatrix ref = naive_reference(trees, spec);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < gram.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < gram.values.cols(); ++j) {
        const double x = gram.values(i, j);
        const double y = ref.values(i, j);
        const double scale = std::max(std::abs(x), std::abs(y));
        if (scale > 0.0) worst = std::max(worst, std::abs(x - y) / scale);
      }
    }
    std::fprintf(stderr, "check-against-naive: max relative difference %.3g\n", worst);
    if (!(worst <= 1e-9)) {
      std::fprintf(stderr, "check-against-naive: FAILED (tolerance 1e-9)\n");
      status = 1;
    }
  }
  if (a.normalize) gram = normalize(gram);
  write_gram(a.out, gram);
  m.write(manifest_for(a.out));
  return status;
}

int run_normalize(const std::string& in, const std::string& out, Manifest& m) {
  const GramMatrix g = read_gram(in);
  m.add_input(in);
  if (!fs::exists(sidecar_path(in))) {
    warn("no sidecar for " + in + "; scalar-linear check relies on the default spec");
  }
  if (g.normalized) warn(in + " is already normalized");
  m.kernel_spec = g.spec;
  write_gram(out, normalize(g));
  m.write(manifest_for(out));
  return 0;
}

int run_psd(const std::string& in, double tol, const std::string& out, Manifest& m) {
  const GramMatrix g = read_gram(in);
  m.add_input(in);
  const PsdReport r = psd_check(g, tol);
  json j{{"gram", in}, {"size", g.size()}, {"min_eig", r.min_eig}, {"max_eig", r.max_eig},
         {"tolerance", tol}, {"is_psd", r.is_psd}};
  emit(j, out);
  if (!out.empty()) m.write(manifest_for(out));
  return r.is_psd ? 0 : 1;
}

struct TestArgs {
  std::string gram;
  std::string labels;
  std::size_t permutations = 10000;
  std::uint64_t seed = 0;
  int threads = available_threads();
  std::string out;
};

int run_test(const TestArgs& a, Manifest& m) {
  const GramMatrix g = read_gram(a.gram);
  const auto labels = read_labels(a.labels);
  m.add_input(a.gram);
  m.add_input(a.labels);
  m.seed = a.seed;
  m.kernel_spec = g.spec;
  const auto [idx, lab] = align_labels(g, labels);
  std::vector<std::size_t> sa, sb;
  for (std::size_t i : idx) (lab[i] == 0 ? sa : sb).push_back(i);

  const TwoSampleResult r = permutation_test(g.values, sa, sb, a.permutations, a.seed, a.threads);
  json q = json::object();
  for (const auto& [prob, value] : r.permutation_stats.quantiles) {
    char key[16];
    std::snprintf(key, sizeof key, "%.2f", prob);
    q[key] = value;
  }
  json j;
  j["statistic"] = r.t0;
  j["p_value"] = r.p_value;
  j["n_permutations"] = r.n_permutations;
  j["seed"] = r.seed;
  j["sample_sizes"] = {{"a", r.size_a}, {"b", r.size_b}};
  j["kernel_spec_ref"] = spec_ref(a.gram, g);
  j["quantiles"] = q;
  j["permutation_min"] = r.permutation_stats.min;
  j["permutation_max"] = r.permutation_stats.max;
  j["permutation_mean"] = r.permutation_stats.mean;
  emit(j, a.out);
  if (!a.out.empty()) m.write(manifest_for(a.out));
  return 0;
}

struct ClassifyArgs {
  std::string gram;
  std::string labels;
  double holdout = 0.2;
  std::uint64_t seed = 0;
  std::string out;
};

int run_classify(const ClassifyArgs& a, Manifest& m) {
  const GramMatrix g = read_gram(a.gram);
  const auto labels = read_labels(a.labels);
  m.add_input(a.gram);
  m.add_input(a.labels);
  m.seed = a.seed;
  m.kernel_spec = g.spec;
  const auto [idx, lab] = align_labels(g, labels);
  const ClassificationReport r = holdout_classify(g.values, lab, a.holdout, a.seed);
  json j;
  j["accuracy"] = r.accuracy;
  j["n_test"] = r.n_test;
  j["holdout"] = a.holdout;
  j["seed"] = a.seed;
  j["per_class"] = {{"0", {{"correct", r.correct[0]}, {"total", r.total[0]}}},
                    {"1", {{"correct", r.correct[1]}, {"total", r.total[1]}}}};
  j["kernel_spec_ref"] = spec_ref(a.gram, g);
  emit(j, a.out);
  if (!a.out.empty()) m.write(manifest_for(a.out));
  return 0;
}

struct BenchArgs {
  std::string kernels = "rootpath-node-linear-fast,rootpath-node-naive";
  std::string sizes = "50,100,200,400,800";
  std::size_t repeats = 5;
  std::string form = "linear";
  std::size_t n = 3;
  std::uint64_t seed = 0;
  double min_time = 0.02;
  std::string out;
};

int run_bench(const BenchArgs& a, Manifest& m) {
  std::vector<std::size_t> sizes;
  for (const auto& s : split_list(a.sizes)) {
    try {
      sizes.push_back(std::stoul(s));
    } catch (const std::exception&) {
      throw UsageError("--sizes: bad size '" + s + "'");
    }
  }
  if (sizes.empty()) throw UsageError("--sizes is empty");
  if (a.repeats < 1) throw UsageError("--repeats must be at least 1");
  m.seed = a.seed;

  std::string csv = "kernel,nodes,height,repeats,median_seconds,fitted_slope\n";
  for (const auto& name : split_list(a.kernels)) {
    KernelSpec spec;
    spec.kind = parse_kernel_kind(name);
    spec.form = parse_kernel_form(a.form);
    validate(spec);

    const ScalingResult res = measure_scaling(spec, sizes, a.repeats, a.n, a.seed, a.min_time);
    char line[256];
    for (const auto& r : res.rows) {
      std::snprintf(line, sizeof line, "%s,%zu,%zu,%zu,%.6e,%.4f\n", name.c_str(), r.nodes,
                    r.height, a.repeats, r.median_seconds, res.slope);
      csv += line;
    }
  }
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
    m.write(manifest_for(a.out));
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(std::move(args));

  CLI::App app{"Geometric tree kernels: Gram matrices, two-sample tests and classification"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic two-class tree dataset");
  cmd_gen->add_option("--preset", gen.preset, "null | attr-shift | branch-shift")
      ->capture_default_str()
      ->check(CLI::IsMember(preset_names()));
  cmd_gen->add_option("--size", gen.size, "Total number of trees")->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  cmd_gen->add_option("--generator", gen.generator,
                      "Generator config JSON: one config, or {\"a\": {...}, \"b\": {...}}");
  cmd_gen->add_option("--out", gen.out, "Output directory")->required();

  KernelArgs kern;
  SpecFlags kflags;
  auto* cmd_kernel = app.add_subcommand("kernel", "Compute a Gram matrix");
  cmd_kernel->add_option("--data", kern.data, "Tree dataset (JSON file or directory)")->required();
  kflags.add(cmd_kernel);
  cmd_kernel->add_option("--threads", kern.threads, "Worker threads")->capture_default_str();
  cmd_kernel->add_flag("--normalize", kern.normalize, "Normalize to unit diagonal");
  cmd_kernel->add_flag("--check-against-naive", kern.check_against_naive,
                       "Compare with the serial naive evaluation (exit 1 on mismatch > 1e-9)");
  cmd_kernel->add_option("--out", kern.out, "Gram CSV path")->required();

  std::string norm_in, norm_out;
  auto* cmd_norm = app.add_subcommand("normalize", "Normalize a Gram matrix");
  cmd_norm->add_option("--gram", norm_in, "Input Gram CSV")->required();
  cmd_norm->add_option("--out", norm_out, "Output Gram CSV")->required();

  std::string psd_in, psd_out;
  double psd_tol = 1e-8;
  auto* cmd_psd = app.add_subcommand("psd", "Check a Gram matrix for positive semidefiniteness");
  cmd_psd->add_option("--gram", psd_in, "Gram CSV")->required();
  cmd_psd->add_option("--tol", psd_tol, "Relative eigenvalue tolerance")->capture_default_str();
  cmd_psd->add_option("--out", psd_out, "Report JSON (default stdout)");

  TestArgs test;
  auto* cmd_test = app.add_subcommand("test", "Kernel two-sample permutation test");
  cmd_test->add_option("--gram", test.gram, "Gram CSV")->required();
  cmd_test->add_option("--labels", test.labels, "Labels CSV (tree_id,label)")->required();
  cmd_test->add_option("--permutations", test.permutations, "Number of permutations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_test->add_option("--seed", test.seed, "Random seed")->capture_default_str();
  cmd_test->add_option("--threads", test.threads, "Worker threads")->capture_default_str();
  cmd_test->add_option("--out", test.out, "Result JSON (default stdout)");

  ClassifyArgs cls;
  auto* cmd_cls = app.add_subcommand("classify", "Nearest-mean holdout classification");
  cmd_cls->add_option("--gram", cls.gram, "Gram CSV")->required();
  cmd_cls->add_option("--labels", cls.labels, "Labels CSV (tree_id,label)")->required();
  cmd_cls->add_option("--holdout", cls.holdout, "Held-out fraction per class")
      ->capture_default_str();
  cmd_cls->add_option("--seed", cls.seed, "Random seed")->capture_default_str();
  cmd_cls->add_option("--out", cls.out, "Report JSON (default stdout)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Per-pair runtime versus tree size");
  cmd_bench->add_option("--kernel", bench.kernels, "Comma-separated kernel names")
      ->capture_default_str();
  cmd_bench->add_option("--sizes", bench.sizes, "Comma-separated node counts")
      ->capture_default_str();
  cmd_bench->add_option("--repeats", bench.repeats, "Timing repeats per size")
      ->capture_default_str();
  cmd_bench->add_option("--form", bench.form, "Node kernel form")->capture_default_str();
  cmd_bench->add_option("--n", bench.n, "Geometric dimension")->capture_default_str();
  cmd_bench->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  cmd_bench->add_option("--min-time", bench.min_time, "Seconds per timing sample")
      ->capture_default_str();
  cmd_bench->add_option("--out", bench.out, "CSV path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Manifest m;
  m.arguments = args;
  if (cmd_gen->parsed()) {
    m.command = "gen";
    return run_gen(gen, m);
  }
  if (cmd_kernel->parsed()) {
    m.command = "kernel";
    return run_kernel(kern, kflags, m);
  }
  if (cmd_norm->parsed()) {
    m.command = "normalize";
    return run_normalize(norm_in, norm_out, m);
  }
  if (cmd_psd->parsed()) {
    m.command = "psd";
    return run_psd(psd_in, psd_tol, psd_out, m);
  }
  if (cmd_test->parsed()) {
    m.command = "test";
    return run_test(test, m);
  }
  if (cmd_cls->parsed()) {
    m.command = "classify";
    return run_classify(cls, m);
  }
  m.command = "bench";
  return run_bench(bench, m);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const SpecError& e) {
    std::fprintf(stderr, "spec error: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
