#include "geokern/gram.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "geokern/common.hpp"
#include "geokern/parallel.hpp"
#include "geokern/tree_io.hpp"

namespace geokern {

namespace {

GramMatrix empty_gram(std::span<const GeometricTree> trees, const KernelSpec& spec) {
  GramMatrix g;
  g.ids.reserve(trees.size());
  for (const auto& t : trees) g.ids.push_back(t.id());
  g.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(trees.size()),
                                   static_cast<Eigen::Index>(trees.size()));
  g.spec = spec;
  return g;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

GramMatrix assemble(std::span<const GeometricTree> trees, const KernelSpec& spec, int threads) {
  GramMatrix g = empty_gram(trees, spec);
  const PreparedKernel kernel(trees, spec, threads);

  const std::size_t count = trees.size();
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  entries.reserve(count * (count + 1) / 2);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) entries.emplace_back(i, j);
  }
  // Each (i, j) and its mirror are owned by a single iteration.
  parallel_for(entries.size(), threads, [&](std::size_t e) {
    const auto [i, j] = entries[e];
    const double v = kernel(i, j);
    const auto ei = static_cast<Eigen::Index>(i);
    const auto ej = static_cast<Eigen::Index>(j);
    g.values(ei, ej) = v;
    g.values(ej, ei) = v;
  });
  return g;
}

GramMatrix assemble_serial(std::span<const GeometricTree> trees, const KernelSpec& spec) {
  GramMatrix g = empty_gram(trees, spec);
  validate(spec);
  check_compatible(trees, spec);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i; j < trees.size(); ++j) {
      const double v = evaluate_kernel(trees[i], trees[j], spec);
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      g.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return g;
}

GramMatrix normalize(const GramMatrix& gram) {
  if (is_scalar_linear(gram.spec)) {
    throw SpecError("normalization degenerate for scalar linear kernel '" +
                    std::string(kernel_name(gram.spec.kind)) +
                    "': every normalized entry would be 1");
  }
  const Eigen::Index n = gram.values.rows();
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = gram.values(i, i);
    if (!(d > 0.0)) {
      throw DataError("cannot normalize: diagonal entry for tree '" +
                      gram.ids[static_cast<std::size_t>(i)] + "' is " + std::to_string(d));
    }
    scale(i) = std::sqrt(d);
  }
  GramMatrix out = gram;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.values(i, j) = i == j ? 1.0 : gram.values(i, j) / (scale(i) * scale(j));
    }
  }
  out.normalized = true;
  return out;
}

PsdReport psd_check(const Eigen::MatrixXd& values, double tol) {
  if (values.rows() != values.cols()) throw DataError("psd_check: matrix is not square");
  if (values.size() == 0) return {0.0, 0.0, true};
  const double asym = (values - values.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9) {
    throw DataError("psd_check: matrix is not symmetric (max |G - G^T| = " +
                    std::to_string(asym) + ")");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DataError("psd_check: eigensolver failed");
  PsdReport r;
  r.min_eig = solver.eigenvalues().minCoeff();
  r.max_eig = solver.eigenvalues().maxCoeff();
  r.is_psd = r.min_eig >= -tol * std::max(std::abs(r.max_eig), 1.0);
  return r;
}

PsdReport psd_check(const GramMatrix& gram, double tol) { return psd_check(gram.values, tol); }

GramMatrix combine(const GramMatrix& a, const GramMatrix& b) {
  if (a.ids != b.ids) throw DataError("combine: Gram matrices have different tree ids");
  GramMatrix out = a;
  out.values = a.values + b.values;
  return out;
}

std::string gram_to_csv(const GramMatrix& gram) {
  std::string out = "id";
  for (const auto& id : gram.ids) {
    out += ',';
    out += id;
  }
  out += '\n';
  char buf[40];
  for (std::size_t i = 0; i < gram.ids.size(); ++i) {
    out += gram.ids[i];
    for (std::size_t j = 0; j < gram.ids.size(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g",
                    gram.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

GramMatrix gram_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DataError("Gram CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  if (header.empty() || header[0] != "id") throw DataError("Gram CSV header must start with 'id'");
  GramMatrix g;
  g.ids.assign(header.begin() + 1, header.end());
  const auto n = static_cast<Eigen::Index>(g.ids.size());
  g.values = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("Gram CSV has fewer rows than columns");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split(line, ',');
    if (static_cast<Eigen::Index>(fields.size()) != n + 1) {
      throw DataError("Gram CSV row " + std::to_string(i + 1) + " has wrong field count");
    }
    if (fields[0] != g.ids[static_cast<std::size_t>(i)]) {
      throw DataError("Gram CSV row id '" + fields[0] + "' does not match column order");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string& f = fields[static_cast<std::size_t>(j + 1)];
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw DataError("Gram CSV: bad number '" + f + "'");
      }
      g.values(i, j) = v;
    }
  }
  return g;
}

std::string gram_sidecar_json(const GramMatrix& gram) {
  nlohmann::json j;
  j["kernel_spec"] = gram.spec;
  j["normalized"] = gram.normalized;
  j["size"] = gram.ids.size();
  j["software_version"] = std::string(kVersion);
  return j.dump(2) + "\n";
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".meta.json");
}

void write_gram(const std::filesystem::path& csv_path, const GramMatrix& gram) {
  write_file(csv_path, gram_to_csv(gram));
  write_file(sidecar_path(csv_path), gram_sidecar_json(gram));
}

GramMatrix read_gram(const std::filesystem::path& csv_path) {
  GramMatrix g = gram_from_csv(read_file(csv_path));
  const auto meta = sidecar_path(csv_path);
  if (std::filesystem::exists(meta)) {
    try {
      const auto j = nlohmann::json::parse(read_file(meta));
      g.spec = j.at("kernel_spec").get<KernelSpec>();
      g.normalized = j.at("normalized").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError("invalid Gram sidecar " + meta.string() + ": " + e.what());
    }
  }
  return g;
}

}  // namespace geokern
