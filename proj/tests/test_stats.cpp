#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "geokern/common.hpp"
#include "geokern/rng.hpp"
#include "geokern/stats.hpp"

using namespace geokern;
using Idx = std::vector<std::size_t>;

namespace {

Eigen::MatrixXd random_psd(CounterRng& rng, Eigen::Index n, Eigen::Index rank) {
  Eigen::MatrixXd x(n, rank);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  return x * x.transpose();
}

// Explicit feature vectors from the symmetric square root of G.
double feature_space_distance(const Eigen::MatrixXd& g, const Idx& a, const Idx& b) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd phi = es.eigenvectors() * root.asDiagonal();
  Eigen::VectorXd ma = Eigen::VectorXd::Zero(g.rows());
  Eigen::VectorXd mb = Eigen::VectorXd::Zero(g.rows());
  for (auto i : a) ma += phi.row(static_cast<Eigen::Index>(i)).transpose();
  for (auto i : b) mb += phi.row(static_cast<Eigen::Index>(i)).transpose();
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  return (ma - mb).norm();
}

}  // namespace

TEST_CASE("statistic examples") {
  Eigen::Matrix2d same;
  same << 1, 1, 1, 1;
  CHECK(mean_distance_statistic(same, Idx{0}, Idx{1}) == 0.0);
  Eigen::Matrix2d half;
  half << 1, 0.5, 0.5, 1;
  CHECK(mean_distance_statistic(half, Idx{0}, Idx{1}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("statistic matches explicit feature-space means") {
  CounterRng rng(1, 0);
  for (int k = 0; k < 50; ++k) {
    const auto g = random_psd(rng, 6, 1 + static_cast<Eigen::Index>(rng.below(6)));
    Idx perm(6);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    const Idx a(perm.begin(), perm.begin() + 3), b(perm.begin() + 3, perm.end());
    const double t = mean_distance_statistic(g, a, b);
    CHECK(t == doctest::Approx(feature_space_distance(g, a, b)).epsilon(1e-9));
    CHECK(t == mean_distance_statistic(g, b, a));
  }
}

TEST_CASE("statistic errors") {
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(mean_distance_statistic(g, Idx{}, Idx{1}), DataError);
  CHECK_THROWS_AS(mean_distance_statistic(g, Idx{0, 1}, Idx{1, 2}), DataError);
  CHECK_THROWS_AS(mean_distance_statistic(g, Idx{0}, Idx{4}), DataError);
  CHECK_THROWS_AS(permutation_test(g, Idx{0}, Idx{1}, 0, 1), DataError);
}

TEST_CASE("identical rows give p = 1") {
  const Eigen::MatrixXd g = Eigen::MatrixXd::Constant(6, 6, 2.0);
  const auto r = permutation_test(g, Idx{0, 1, 2}, Idx{3, 4, 5}, 200, 3);
  CHECK(r.t0 == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("p-value floor with 10000 permutations") {
  // Two tight, far apart clusters: no relabeling reaches the observed split.
  const std::size_t n = 40;
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (i < 20) == (j < 20) ? 1.0 : 0.0;
    }
  }
  Idx a(20), b(20);
  std::iota(a.begin(), a.end(), std::size_t{0});
  std::iota(b.begin(), b.end(), std::size_t{20});
  const auto r = permutation_test(g, a, b, 10000, 7);
  CHECK(r.n_exceeding == 0);
  CHECK(r.p_value == 1.0 / 10001.0);
  CHECK(r.p_value == doctest::Approx(9.99e-5).epsilon(1e-3));
  CHECK(r.p_value >= 1.0 / 10001.0);
}

TEST_CASE("permutation test properties") {
  CounterRng rng(2, 0);
  const auto g = random_psd(rng, 20, 5);
  Idx a, b;
  for (std::size_t i = 0; i < 20; ++i) (i % 3 ? a : b).push_back(i);
  const auto serial = permutation_test_serial(g, a, b, 500, 11);
  for (int threads : {1, 3, 8}) {
    const auto par = permutation_test(g, a, b, 500, 11, threads);
    CHECK(par.t0 == serial.t0);
    CHECK(par.p_value == serial.p_value);
    CHECK(par.n_exceeding == serial.n_exceeding);
    CHECK(par.permutation_stats.mean == serial.permutation_stats.mean);
  }
  const auto r = permutation_test(g, a, b, 500, 11);
  CHECK(r.p_value == static_cast<double>(r.n_exceeding + 1) / 501.0);
  CHECK(r.size_a == a.size());
  CHECK(r.size_b == b.size());
  CHECK(r.permutation_stats.min <= r.permutation_stats.quantiles[0].second);
  CHECK(r.permutation_stats.quantiles[4].second <= r.permutation_stats.max);
  const auto other = permutation_test(g, a, b, 500, 12);
  CHECK(other.permutation_stats.mean != r.permutation_stats.mean);
}

TEST_CASE("summary quantiles") {
  const auto s = summarize({4.0, 0.0, 1.0, 3.0, 2.0});
  CHECK(s.min == 0.0);
  CHECK(s.max == 4.0);
  CHECK(s.mean == 2.0);
  REQUIRE(s.quantiles.size() == 5);
  CHECK(s.quantiles[0].second == doctest::Approx(0.2));
  CHECK(s.quantiles[1].second == 1.0);
  CHECK(s.quantiles[2].second == 2.0);
  CHECK(s.quantiles[4].second == doctest::Approx(3.8));
}

TEST_CASE("nearest mean classifier") {
  // Points on a line with the linear kernel.
  const std::vector<double> x{0.0, 1.0, 10.0, 11.0, 2.0, 9.0, 5.5};
  Eigen::MatrixXd g(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g(i, j) = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  const auto labels = nearest_mean_classify(g, Idx{0, 1}, Idx{2, 3}, Idx{4, 5, 6});
  // means 0.5 and 10.5: 5.5 is equidistant and goes to A
  CHECK(labels == std::vector<int>{0, 1, 0});
  CHECK_THROWS_AS(nearest_mean_classify(g, Idx{0, 1}, Idx{2, 3}, Idx{1}), DataError);
  CHECK_THROWS_AS(nearest_mean_classify(g, Idx{}, Idx{2, 3}, Idx{4}), DataError);
}

TEST_CASE("stratified holdout") {
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) labels.push_back(i < 20 ? 0 : 1);
  const auto s = stratified_holdout(labels, 0.2, 3);
  CHECK(s.train_a.size() == 16);
  CHECK(s.train_b.size() == 24);
  CHECK(s.test.size() == 10);
  std::vector<int> seen(50, 0);
  for (auto v : {s.train_a, s.train_b, s.test})
    for (auto i : v) ++seen[i];
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  for (auto i : s.train_a) CHECK(labels[i] == 0);
  for (auto i : s.train_b) CHECK(labels[i] == 1);
  const auto again = stratified_holdout(labels, 0.2, 3);
  CHECK(again.test == s.test);
  CHECK_THROWS_AS(stratified_holdout(labels, 1.0, 3), DataError);
  CHECK_THROWS_AS(stratified_holdout(labels, -0.1, 3), DataError);
  CHECK_THROWS_AS(stratified_holdout(std::vector<int>{0, 1, 1}, 0.5, 3), DataError);
}

TEST_CASE("shuffled labels classify at chance") {
  CounterRng rng(4, 0);
  const auto g = random_psd(rng, 400, 10);
  double total = 0.0;
  const int rounds = 20;
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> labels(400);
    for (auto& l : labels) l = static_cast<int>(rng.below(2));
    total += holdout_classify(g, labels, 0.25, static_cast<std::uint64_t>(r)).accuracy;
  }
  CHECK(std::abs(total / rounds - 0.5) <= 0.1);
}
