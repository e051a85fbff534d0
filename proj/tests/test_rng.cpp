#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "geokern/rng.hpp"

using geokern::CounterRng;

// Golden values from an independent SplitMix64 re-implementation.
TEST_CASE("raw stream golden values") {
  CounterRng a(0, 0);
  CHECK(a.next() == 0x83318a9282400131ULL);
  CHECK(a.next() == 0xd247d3921df91bd3ULL);
  CHECK(a.next() == 0x54562af1661ea201ULL);
  CounterRng b(42, 7);
  CHECK(b.next() == 0xb1d031fb3d144310ULL);
  CHECK(b.next() == 0x74d5bf8096abbf87ULL);
  CHECK(b.next() == 0xccac3bc322b69d15ULL);
}

TEST_CASE("bounded, uniform and shuffle golden values") {
  CounterRng b(42, 7);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 10; ++i) got.push_back(b.below(10));
  CHECK(got == std::vector<std::uint64_t>{6, 4, 7, 1, 5, 7, 7, 0, 7, 1});

  CounterRng u(1, 2);
  CHECK(u.uniform() == 0.5772360410668808);
  CHECK(u.uniform() == 0.8878157913947525);
  CHECK(u.uniform() == 0.23523871722315692);

  CounterRng s(5, 0);
  std::array<int, 8> v{0, 1, 2, 3, 4, 5, 6, 7};
  s.shuffle(std::span<int>(v));
  CHECK(v == std::array<int, 8>{0, 6, 7, 4, 3, 1, 5, 2});
}

TEST_CASE("streams are independent and reproducible") {
  CounterRng a(3, 1), b(3, 1), c(3, 2), d(4, 1);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
}

TEST_CASE("below is in range and roughly uniform") {
  CounterRng r(99, 0);
  std::array<int, 7> hist{};
  for (int i = 0; i < 70000; ++i) ++hist[r.below(7)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 400);
}

TEST_CASE("normal moments") {
  CounterRng r(7, 7);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}
