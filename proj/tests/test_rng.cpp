#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "eclk/rng.hpp"

using eclk::RngStream;
using eclk::SplitMix64;

// Raw engine outputs frozen against an independent implementation of the
// standard mt19937_64 algorithm.
TEST_CASE("engine matches the reference sequence") {
  RngStream r(42);
  CHECK(r.NextU64() == 13930160852258120406ULL);
  CHECK(r.NextU64() == 11788048577503494824ULL);
  CHECK(r.NextU64() == 13874630024467741450ULL);
}

TEST_CASE("unit doubles are the top 53 bits") {
  RngStream r(42);
  CHECK(r.NextUnit() == doctest::Approx(0.755155532954539).epsilon(1e-15));
  CHECK(r.NextUnit() == doctest::Approx(0.6390313938546974).epsilon(1e-15));
  for (int i = 0; i < 10000; ++i) {
    const double u = r.NextUnit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("splitmix64 matches the published finalizer") {
  CHECK(SplitMix64(0) == 16294208416658607535ULL);
  CHECK(SplitMix64(1) == 10451216379200822465ULL);
  CHECK(SplitMix64(0xDEADBEEFULL) == 5395234354446855067ULL);
}

TEST_CASE("derived streams are reproducible and distinct") {
  // seed algebra frozen against the reference finalizer
  RngStream a = RngStream::Derive(3, 1);
  RngStream b(571297168763557480ULL);
  for (int i = 0; i < 8; ++i) CHECK(a.NextU64() == b.NextU64());

  RngStream c = RngStream::Derive(3, 2);
  RngStream d = RngStream::Derive(4, 1);
  RngStream e = RngStream::Derive(3, 1);
  const std::uint64_t first = e.NextU64();
  CHECK(c.NextU64() != first);
  CHECK(d.NextU64() != first);
}

TEST_CASE("bounded draws stay in range and cover uniformly") {
  RngStream r(123);
  std::vector<int> counts(10, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const std::int64_t v = r.NextBelow(10);
    REQUIRE(v >= 0);
    REQUIRE(v < 10);
    ++counts[static_cast<size_t>(v)];
  }
  for (int c : counts) {
    const double f = static_cast<double>(c) / draws;
    CHECK(f > 0.08);
    CHECK(f < 0.12);
  }
  CHECK_THROWS_AS(r.NextBelow(0), std::invalid_argument);
  CHECK_THROWS_AS(r.NextBelow(-3), std::invalid_argument);
  for (int i = 0; i < 100; ++i) CHECK(r.NextBelow(1) == 0);
}

TEST_CASE("gaussian draws match the reference pair and the moments") {
  RngStream r(7);
  CHECK(r.NextGaussian() == doctest::Approx(0.7130298338875811).epsilon(1e-12));
  CHECK(r.NextGaussian() == doctest::Approx(-0.2351435987854787).epsilon(1e-12));

  RngStream m(2024);
  const int draws = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double g = m.NextGaussian();
    s1 += g;
    s2 += g * g;
  }
  const double mean = s1 / draws;
  const double var = s2 / draws - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("bernoulli frequency tracks p") {
  RngStream r(55);
  const int draws = 100000;
  int hits = 0;
  for (int i = 0; i < draws; ++i)
    if (r.Bernoulli(0.3)) ++hits;
  const double f = static_cast<double>(hits) / draws;
  CHECK(std::abs(f - 0.3) < 0.01);
}

TEST_CASE("identical seeds give identical streams") {
  RngStream a(999), b(999);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  // mixed-call determinism: interleaving draw kinds stays aligned
  RngStream c(999), d(999);
  for (int i = 0; i < 50; ++i) {
    CHECK(c.NextUnit() == d.NextUnit());
    CHECK(c.NextGaussian() == d.NextGaussian());
    CHECK(c.NextBelow(17) == d.NextBelow(17));
  }
}
