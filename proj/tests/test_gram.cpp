#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "geokern/common.hpp"
#include "geokern/gram.hpp"
#include "support.hpp"

using namespace geokern;

namespace {

KernelSpec make(KernelKind kind, KernelForm form = KernelForm::gaussian, bool attr = false) {
  KernelSpec s;
  s.kind = kind;
  s.form = form;
  s.use_attributes = attr;
  return s;
}

// One spec per kernel, with the interesting form/attribute variants.
std::vector<KernelSpec> all_specs() {
  std::vector<KernelSpec> out;
  for (auto kind : {KernelKind::all_pairs_node, KernelKind::rootpath_node_naive,
                    KernelKind::rootpath_node}) {
    for (auto form : {KernelForm::linear, KernelForm::gaussian}) {
      for (bool attr : {false, true}) out.push_back(make(kind, form, attr));
    }
  }
  out.push_back(make(KernelKind::rootpath_node_linear_fast, KernelForm::linear, false));
  out.push_back(make(KernelKind::rootpath_node_linear_fast, KernelForm::linear, true));
  for (auto kind : {KernelKind::all_pairs_embedded, KernelKind::rootpath_embedded}) {
    for (auto form : {KernelForm::linear, KernelForm::gaussian}) {
      auto s = make(kind, form);
      s.landmarks = 5;
      out.push_back(s);
    }
  }
  out.push_back(make(KernelKind::pointcloud));
  out.push_back(make(KernelKind::aaw));
  out.push_back(make(KernelKind::aaw, KernelForm::linear));
  auto agaw = make(KernelKind::agaw);
  agaw.gen_lo = 1;
  agaw.gen_hi = 3;
  out.push_back(agaw);
  out.push_back(make(KernelKind::lbc));
  out.push_back(make(KernelKind::gbc));
  out.push_back(make(KernelKind::sp));
  auto spl = make(KernelKind::sp);
  spl.sp_length = LengthKernel::linear;
  out.push_back(spl);
  auto wl = make(KernelKind::wl);
  wl.wl_iterations = 3;
  out.push_back(wl);
  return out;
}

std::vector<GeometricTree> population(std::uint64_t seed, std::size_t count, std::size_t max_size) {
  CounterRng rng(seed, 0);
  std::vector<GeometricTree> trees;
  for (std::size_t i = 0; i < count; ++i) {
    trees.push_back(testsupport::random_tree(rng, 1 + rng.below(max_size), 3, 1,
                                             "t" + std::to_string(i)));
  }
  return trees;
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

struct QuietWarnings {
  QuietWarnings() { set_warning_handler([](std::string_view) {}); }
  ~QuietWarnings() { set_warning_handler(nullptr); }
};

}  // namespace

TEST_CASE("small assemblies") {
  const auto trees = population(1, 1, 5);
  const auto g = assemble(trees, make(KernelKind::rootpath_node), 2);
  REQUIRE(g.size() == 1);
  CHECK(g.values(0, 0) == evaluate_kernel(trees[0], trees[0], g.spec));

  CounterRng rng(2, 0);
  std::vector<GeometricTree> gbc_trees{testsupport::random_tree(rng, 3, 3, 1, "a"),
                                       testsupport::random_tree(rng, 3, 3, 1, "b"),
                                       testsupport::random_tree(rng, 5, 3, 1, "c")};
  const auto b = assemble(gbc_trees, make(KernelKind::gbc), 1);
  Eigen::Matrix3d want;
  const double e4 = std::exp(-4.0);
  want << 1, 1, e4, 1, 1, e4, e4, e4, 1;
  CHECK((b.values - want).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b.ids == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("parallel assembly equals the serial reference bitwise for every kernel") {
  QuietWarnings quiet;
  const auto trees = population(3, 12, 10);
  for (const auto& spec : all_specs()) {
    CAPTURE(kernel_name(spec.kind));
    CAPTURE(to_string(spec.form));
    CAPTURE(spec.use_attributes);
    const auto serial = assemble_serial(trees, spec);
    const auto one = assemble(trees, spec, 1);
    const auto many = assemble(trees, spec, 8);
    CHECK(bitwise_equal(serial.values, one.values));
    CHECK(bitwise_equal(one.values, many.values));
    CHECK(bitwise_equal(many.values, many.values.transpose().eval()));
  }
}

TEST_CASE("fast rootpath assembly matches naive") {
  const auto trees = population(4, 20, 25);
  for (bool attr : {false, true}) {
    const auto fast =
        assemble(trees, make(KernelKind::rootpath_node_linear_fast, KernelForm::linear, attr), 4);
    const auto naive =
        assemble_serial(trees, make(KernelKind::rootpath_node_naive, KernelForm::linear, attr));
    for (Eigen::Index i = 0; i < 20; ++i) {
      for (Eigen::Index j = 0; j < 20; ++j) {
        CHECK(testsupport::rel_close(fast.values(i, j), naive.values(i, j), 1e-9));
      }
    }
  }
}

TEST_CASE("every kernel gives a PSD Gram matrix") {
  QuietWarnings quiet;
  const auto trees = population(5, 30, 12);
  for (const auto& spec : all_specs()) {
    CAPTURE(kernel_name(spec.kind));
    CAPTURE(to_string(spec.form));
    const auto g = assemble(trees, spec, 2);
    CHECK(psd_check(g).is_psd);
  }
}

TEST_CASE("assembly errors") {
  auto trees = population(6, 3, 4);
  CounterRng rng(6, 1);
  trees.push_back(testsupport::random_tree(rng, 3, 2, 1, "flat"));
  CHECK_THROWS_AS(assemble(trees, make(KernelKind::rootpath_node), 2), DataError);
  CHECK_THROWS_AS(assemble_serial(trees, make(KernelKind::gbc)), DataError);
  const auto bare = std::vector<GeometricTree>{testsupport::random_tree(rng, 3, 2, 0)};
  CHECK_THROWS_AS(assemble(bare, make(KernelKind::aaw), 1), SpecError);
  CHECK_THROWS_AS(assemble(bare, make(KernelKind::rootpath_node, KernelForm::gaussian, true), 1),
                  SpecError);
  CHECK_THROWS_AS(assemble(bare, make(KernelKind::rootpath_node_linear_fast), 1), SpecError);
}

TEST_CASE("normalization") {
  GramMatrix g;
  g.ids = {"a", "b"};
  g.values.resize(2, 2);
  g.values << 4, 2, 2, 9;
  const auto n = normalize(g);
  CHECK(n.normalized);
  CHECK(n.values(0, 0) == 1.0);
  CHECK(n.values(1, 1) == 1.0);
  CHECK(n.values(0, 1) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(n.values(1, 0) == n.values(0, 1));
  CHECK((normalize(n).values - n.values).cwiseAbs().maxCoeff() < 1e-15);

  g.values(1, 1) = 0.0;
  try {
    normalize(g);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }

  const auto trees = population(7, 6, 6);
  for (const auto& spec : {make(KernelKind::lbc), make(KernelKind::aaw, KernelForm::linear)}) {
    const auto s = assemble(trees, spec, 1);
    try {
      normalize(s);
      FAIL("expected SpecError");
    } catch (const SpecError& e) {
      CHECK(std::string(e.what()).find("normalization degenerate for scalar linear kernel") !=
            std::string::npos);
    }
  }
  const auto r = normalize(assemble(trees, make(KernelKind::rootpath_node), 1));
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(r.values(i, i) == 1.0);
  CHECK(psd_check(r).is_psd);
}

TEST_CASE("psd check") {
  const auto id = psd_check(Eigen::MatrixXd::Identity(4, 4));
  CHECK(id.min_eig == doctest::Approx(1.0));
  CHECK(id.is_psd);
  Eigen::Matrix2d m;
  m << 1, 2, 2, 1;
  const auto r = psd_check(Eigen::MatrixXd(m));
  CHECK(r.min_eig == doctest::Approx(-1.0));
  CHECK(r.max_eig == doctest::Approx(3.0));
  CHECK_FALSE(r.is_psd);
  m(0, 1) = 2.1;
  CHECK_THROWS_AS(psd_check(Eigen::MatrixXd(m)), DataError);
}

TEST_CASE("combine") {
  CounterRng rng(8, 0);
  for (int k = 0; k < 10; ++k) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 4);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(6, 3);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = rng.normal();
    GramMatrix a, b;
    a.ids = b.ids = {"1", "2", "3", "4", "5", "6"};
    a.values = x * x.transpose();
    b.values = y * y.transpose();
    const auto c = combine(a, b);
    CHECK(psd_check(c).is_psd);
    CHECK(combine(a, a).values == 2.0 * a.values);
    GramMatrix zero = a;
    zero.values.setZero();
    CHECK(combine(a, zero).values == a.values);
    b.ids[5] = "7";
    CHECK_THROWS_AS(combine(a, b), DataError);
  }
}

TEST_CASE("CSV and sidecar round trip") {
  const auto trees = population(9, 5, 6);
  auto spec = make(KernelKind::rootpath_node, KernelForm::gaussian, true);
  spec.lambda1 = 0.25;
  const auto g = assemble(trees, spec, 1);
  const auto back = gram_from_csv(gram_to_csv(g));
  CHECK(back.ids == g.ids);
  CHECK(bitwise_equal(back.values, g.values));

  const auto dir = std::filesystem::temp_directory_path() / "geokern_test_gram";
  std::filesystem::create_directories(dir);
  write_gram(dir / "g.csv", normalize(g));
  const auto read = read_gram(dir / "g.csv");
  CHECK(read.normalized);
  CHECK(read.spec.kind == KernelKind::rootpath_node);
  CHECK(read.spec.use_attributes);
  CHECK(read.spec.lambda1 == std::optional<double>(0.25));
  CHECK_FALSE(read.spec.lambda2.has_value());
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(gram_from_csv(""), DataError);
  CHECK_THROWS_AS(gram_from_csv("x,a\na,1\n"), DataError);
  CHECK_THROWS_AS(gram_from_csv("id,a,b\na,1,2\n"), DataError);
  CHECK_THROWS_AS(gram_from_csv("id,a\nb,1\n"), DataError);
  CHECK_THROWS_AS(gram_from_csv("id,a\na,1x\n"), DataError);
}

TEST_CASE("spec JSON") {
  for (const auto& spec : all_specs()) {
    nlohmann::json j = spec;
    const auto back = j.get<KernelSpec>();
    CHECK(nlohmann::json(back) == j);
  }
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"kernel":"nope"})").get<KernelSpec>(), SpecError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"sp_length":"cubic"})").get<KernelSpec>(), SpecError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"([1,2])").get<KernelSpec>(), SpecError);
  for (const auto& name : kernel_names()) CHECK(kernel_name(parse_kernel_kind(name)) == name);
}
