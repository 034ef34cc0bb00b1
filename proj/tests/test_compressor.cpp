#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "eclk/compressor.hpp"
#include "support.hpp"

using namespace eclk;

namespace {

Eigen::VectorXd RandomVector(int d, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.NextGaussian();
  return v;
}

}  // namespace

TEST_CASE("index widths") {
  CHECK(CeilLog2(1) == 0);
  CHECK(CeilLog2(2) == 1);
  CHECK(CeilLog2(3) == 2);
  CHECK(CeilLog2(4) == 2);
  CHECK(CeilLog2(112) == 7);
  CHECK(CeilLog2(123) == 7);
  CHECK(CeilLog2(128) == 7);
  CHECK(CeilLog2(129) == 8);
  CHECK(CeilLog2(1 << 20) == 20);
}

TEST_CASE("message bits match the accounting rules") {
  CHECK(MessageBits(CompressorSpec::TopK(123, 1)) == 71);
  CHECK(MessageBits(CompressorSpec::TopK(112, 1)) == 71);
  CHECK(MessageBits(CompressorSpec::Identity(123)) == 7872);
  CHECK(MessageBits(CompressorSpec::RandK(112, 2)) == 142);
  CHECK(MessageBits(CompressorSpec::Dithering(112, 2)) == 261);
  CHECK(MessageBits(CompressorSpec::Dithering(123, 4)) == 445);
}

TEST_CASE("compression ratios") {
  CHECK(CompressionRatio(CompressorSpec::TopK(112, 1)) ==
        doctest::Approx(0.009905133928571428).epsilon(1e-15));
  CHECK(CompressionRatio(CompressorSpec::TopK(123, 1)) ==
        doctest::Approx(0.009019308943089431).epsilon(1e-15));
  CHECK(CompressionRatio(CompressorSpec::Dithering(112, 2)) ==
        doctest::Approx(0.03633756073950629).epsilon(1e-14));
  CHECK(CompressionRatio(CompressorSpec::Dithering(123, 4)) ==
        doctest::Approx(0.056476949843510205).epsilon(1e-14));
  CHECK(CompressionRatio(CompressorSpec::Identity(77)) == 1.0);
}

TEST_CASE("variance parameter and contraction factors") {
  CHECK(Omega(112, 2) == doctest::Approx(5.291502622129181).epsilon(1e-15));
  CHECK(Omega(123, 4) == doctest::Approx(2.7726341266023544).epsilon(1e-15));
  // d/s^2 smaller than sqrt(d)/s once s > sqrt(d)
  CHECK(Omega(100, 11) == doctest::Approx(0.8264462809917356).epsilon(1e-15));

  CHECK(Delta(CompressorSpec::Identity(9)) == 1.0);
  CHECK(Delta(CompressorSpec::TopK(112, 7)) == doctest::Approx(0.0625));
  CHECK(Delta(CompressorSpec::RandK(10, 10)) == 1.0);
  CHECK(Delta(CompressorSpec::Dithering(112, 2)) ==
        doctest::Approx(0.15894454156034005).epsilon(1e-15));
  CHECK(Delta(CompressorSpec::Dithering(123, 4)) ==
        doctest::Approx(0.2650667852863333).epsilon(1e-15));
}

TEST_CASE("spec validation rejects bad parameters") {
  CHECK_THROWS_AS(CompressorSpec::TopK(0, 1).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(CompressorSpec::TopK(4, 0).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(CompressorSpec::TopK(4, 5).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(CompressorSpec::RandK(4, -1).Validate(), std::invalid_argument);
  CHECK_THROWS_AS(CompressorSpec::Dithering(4, 0).Validate(), std::invalid_argument);
  CHECK_NOTHROW(CompressorSpec::TopK(4, 4).Validate());
  CHECK_NOTHROW(CompressorSpec::Identity(1).Validate());
}

TEST_CASE("top-k keeps the largest magnitudes, ties toward smaller index") {
  Eigen::VectorXd x(4);
  x << 3.0, -3.0, 1.0, 3.0;
  Eigen::VectorXd q2 = TopK(x, 2);
  CHECK(q2[0] == 3.0);
  CHECK(q2[1] == -3.0);
  CHECK(q2[2] == 0.0);
  CHECK(q2[3] == 0.0);
  Eigen::VectorXd q3 = TopK(x, 3);
  CHECK(q3[0] == 3.0);
  CHECK(q3[1] == -3.0);
  CHECK(q3[2] == 0.0);
  CHECK(q3[3] == 3.0);
  CHECK(TopK(x, 4) == x);
}

TEST_CASE("top-k satisfies the deterministic contraction inequality") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::VectorXd x = RandomVector(50, seed);
    for (int k : {1, 5, 25, 50}) {
      const Eigen::VectorXd q = TopK(x, k);
      const double lhs = (x - q).squaredNorm();
      const double rhs = (1.0 - static_cast<double>(k) / 50.0) * x.squaredNorm();
      CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("rand-k keeps an exact unscaled k-subset") {
  const Eigen::VectorXd x = RandomVector(30, 5);
  RngStream rng(9);
  for (int k : {1, 7, 30}) {
    const Eigen::VectorXd q = RandK(x, k, rng);
    int kept = 0;
    for (int i = 0; i < 30; ++i) {
      if (q[i] != 0.0) {
        CHECK(q[i] == x[i]);
        ++kept;
      }
    }
    // x has no exact zeros almost surely, so the count is exactly k
    CHECK(kept == k);
  }
}

TEST_CASE("rand-k selects indices uniformly") {
  const int d = 12, k = 3, draws = 30000;
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(d);
  RngStream rng(31);
  std::vector<int> counts(d, 0);
  for (int t = 0; t < draws; ++t) {
    const Eigen::VectorXd q = RandK(x, k, rng);
    for (int i = 0; i < d; ++i)
      if (q[i] != 0.0) ++counts[static_cast<size_t>(i)];
  }
  const double expect = static_cast<double>(k) / d;
  for (int c : counts) {
    const double f = static_cast<double>(c) / draws;
    CHECK(std::abs(f - expect) < 0.01);
  }
}

TEST_CASE("rand-k statistical contraction and unbiasedness of the scaled form") {
  const int d = 24, k = 5, draws = 20000;
  const Eigen::VectorXd x = RandomVector(d, 77);
  RngStream rng(78);
  Eigen::VectorXd mean_scaled = Eigen::VectorXd::Zero(d);
  std::vector<double> errs;
  errs.reserve(draws);
  for (int t = 0; t < draws; ++t) {
    const Eigen::VectorXd q = RandK(x, k, rng);
    mean_scaled += (static_cast<double>(d) / k) * q;
    errs.push_back((x - q).squaredNorm());
  }
  mean_scaled /= draws;
  // E[(d/k) Q(x)] = x, checked per coordinate at 5 SE of the scaled draw
  const double per_coord_sd =
      std::sqrt(static_cast<double>(d) / k - 1.0) / std::sqrt(static_cast<double>(draws));
  for (int i = 0; i < d; ++i)
    CHECK(std::abs(mean_scaled[i] - x[i]) <= 5.0 * per_coord_sd * std::abs(x[i]) + 1e-3);
  // E||x - Q(x)||^2 = (1 - k/d) ||x||^2 for rand-k; 3 SE band
  const double m = eclk::test::Mean(errs);
  const double se = eclk::test::StdError(errs);
  const double bound = (1.0 - static_cast<double>(k) / d) * x.squaredNorm();
  CHECK(m <= bound + 3.0 * se);
  CHECK(m >= bound - 3.0 * se);
}

TEST_CASE("scaled dithering is a contraction and unbiased before scaling") {
  const int d = 40, s = 2, draws = 40000;
  const Eigen::VectorXd x = RandomVector(d, 13);
  const double omega = Omega(d, s);
  RngStream rng(14);
  Eigen::VectorXd mean_unscaled = Eigen::VectorXd::Zero(d);
  std::vector<double> errs;
  errs.reserve(draws);
  for (int t = 0; t < draws; ++t) {
    const Eigen::VectorXd q = ScaledDither(x, s, rng);
    mean_unscaled += (omega + 1.0) * q;
    errs.push_back((x - q).squaredNorm());
  }
  mean_unscaled /= draws;
  for (int i = 0; i < d; ++i)
    CHECK(std::abs(mean_unscaled[i] - x[i]) < 0.05 * x.norm());
  const double m = eclk::test::Mean(errs);
  const double se = eclk::test::StdError(errs);
  const double bound = (1.0 - 1.0 / (omega + 1.0)) * x.squaredNorm();
  CHECK(m <= bound + 3.0 * se);
}

TEST_CASE("dithering output lives on the quantization grid") {
  const int d = 15, s = 3;
  const Eigen::VectorXd x = RandomVector(d, 21);
  const double scale = x.norm() / (s * (Omega(d, s) + 1.0));
  RngStream rng(22);
  for (int t = 0; t < 50; ++t) {
    const Eigen::VectorXd q = ScaledDither(x, s, rng);
    for (int i = 0; i < d; ++i) {
      const double level = q[i] / scale;
      CHECK(std::abs(level - std::round(level)) < 1e-9);
      CHECK(q[i] * x[i] >= 0.0);  // sign preserved
    }
  }
}

TEST_CASE("zero input compresses to zero without consuming randomness") {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(16);
  for (const CompressorSpec& spec :
       {CompressorSpec::Identity(16), CompressorSpec::TopK(16, 3),
        CompressorSpec::RandK(16, 3), CompressorSpec::Dithering(16, 2)}) {
    RngStream rng(5);
    RngStream probe(5);
    const Eigen::VectorXd q = Apply(spec, zero, rng);
    CHECK(q.norm() == 0.0);
    if (spec.kind == CompressorKind::kDithering || spec.kind == CompressorKind::kIdentity)
      CHECK(rng.NextU64() == probe.NextU64());
  }
}

TEST_CASE("compress agrees with the dense operator") {
  const Eigen::VectorXd x = RandomVector(33, 3);
  for (const CompressorSpec& spec :
       {CompressorSpec::Identity(33), CompressorSpec::TopK(33, 4),
        CompressorSpec::RandK(33, 4), CompressorSpec::Dithering(33, 2)}) {
    RngStream a(71), b(71);
    const Eigen::VectorXd dense = Apply(spec, x, a);
    const CompressedMsg msg = Compress(spec, x, b);
    CHECK((dense - msg.Decode()).norm() < 1e-12 * (1.0 + dense.norm()));
    CHECK(msg.bits == MessageBits(spec));
    CHECK(BitCost(spec, msg) == MessageBits(spec));
  }
}

TEST_CASE("sparse message indices are ascending") {
  const Eigen::VectorXd x = RandomVector(64, 17);
  RngStream rng(18);
  for (const CompressorSpec& spec :
       {CompressorSpec::TopK(64, 9), CompressorSpec::RandK(64, 9)}) {
    const CompressedMsg msg = Compress(spec, x, rng);
    REQUIRE(msg.indices.size() == 9);
    for (size_t i = 1; i < msg.indices.size(); ++i)
      CHECK(msg.indices[i - 1] < msg.indices[i]);
  }
}

TEST_CASE("serialize round trips exactly") {
  const Eigen::VectorXd x = RandomVector(100, 8);
  for (const CompressorSpec& spec :
       {CompressorSpec::Identity(100), CompressorSpec::TopK(100, 6),
        CompressorSpec::RandK(100, 6), CompressorSpec::Dithering(100, 2)}) {
    RngStream rng(29);
    const CompressedMsg msg = Compress(spec, x, rng);
    const CompressedMsg back = Deserialize(spec, msg.Serialize());
    CHECK((msg.Decode() - back.Decode()).norm() == 0.0);
    CHECK(back.bits == msg.bits);
  }
}

TEST_CASE("serialize round trips in one dimension") {
  // d = 1 packs zero-width indices
  Eigen::VectorXd x(1);
  x << -2.5;
  RngStream rng(4);
  const CompressorSpec spec = CompressorSpec::TopK(1, 1);
  const CompressedMsg msg = Compress(spec, x, rng);
  const CompressedMsg back = Deserialize(spec, msg.Serialize());
  CHECK(back.Decode()[0] == -2.5);
}

TEST_CASE("bit cost rejects mismatched messages") {
  const Eigen::VectorXd x = RandomVector(20, 6);
  RngStream rng(7);
  const CompressedMsg top = Compress(CompressorSpec::TopK(20, 2), x, rng);
  CHECK_THROWS_AS(BitCost(CompressorSpec::TopK(20, 3), top), std::invalid_argument);
  CHECK_THROWS_AS(BitCost(CompressorSpec::TopK(21, 2), top), std::invalid_argument);
  CHECK_THROWS_AS(BitCost(CompressorSpec::RandK(20, 2), top), std::invalid_argument);
}

TEST_CASE("compressor draws are reproducible by seed") {
  const Eigen::VectorXd x = RandomVector(48, 30);
  for (const CompressorSpec& spec :
       {CompressorSpec::RandK(48, 5), CompressorSpec::Dithering(48, 2)}) {
    RngStream a(91), b(91);
    const Eigen::VectorXd qa = Apply(spec, x, a);
    const Eigen::VectorXd qb = Apply(spec, x, b);
    CHECK((qa - qb).norm() == 0.0);
  }
}
