#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eclk/problem.hpp"
#include "eclk/rng.hpp"
#include "support.hpp"

using namespace eclk;

namespace {

// 4 x 3 dense toy task; reference constants were computed with an
// independent eigensolver.
Problem ToyFour(PsiSpec psi = PsiSpec::Zero()) {
  Dataset ds = test::MakeDenseDataset(
      {{1.0, 2.0, 0.0}, {0.0, 1.0, -1.0}, {2.0, 0.0, 1.0}, {1.0, 1.0, 1.0}},
      {-1.0, 1.0, 1.0, -1.0});
  Partition part = SplitBlocks({0, 1, 2, 3}, 2);
  return Problem::Build(std::move(ds), std::move(part), 0.1, psi);
}

Eigen::VectorXd Probe3() {
  Eigen::VectorXd x(3);
  x << 0.3, -0.2, 0.5;
  return x;
}

}  // namespace

TEST_CASE("psi values and proximal maps") {
  Eigen::VectorXd x(3);
  x << 1.0, -0.3, 0.5;

  CHECK(PsiValue(PsiSpec::Zero(), x) == 0.0);
  CHECK(PsiValue(PsiSpec::L1(0.8), x) == doctest::Approx(0.8 * 1.8));
  CHECK(PsiValue(PsiSpec::L2(2.0), x) == doctest::Approx(1.34));

  CHECK(Prox(PsiSpec::Zero(), 0.5, x) == x);

  const Eigen::VectorXd l1 = Prox(PsiSpec::L1(0.8), 0.5, x);
  CHECK(l1[0] == doctest::Approx(0.6));
  CHECK(l1[1] == doctest::Approx(0.0));
  CHECK(l1[2] == doctest::Approx(0.09999999999999998));

  const Eigen::VectorXd l2 = Prox(PsiSpec::L2(2.0), 0.5, x);
  CHECK(l2[0] == doctest::Approx(0.5));
  CHECK(l2[1] == doctest::Approx(-0.15));
  CHECK(l2[2] == doctest::Approx(0.25));

  CHECK(PsiSpec::L2(2.0).Mu() == 2.0);
  CHECK(PsiSpec::L1(0.8).Mu() == 0.0);
}

TEST_CASE("prox is the resolvent: optimality of the minimized objective") {
  RngStream rng(11);
  Eigen::VectorXd v(6);
  for (int i = 0; i < 6; ++i) v[i] = rng.NextGaussian();
  for (const PsiSpec& psi : {PsiSpec::L1(0.37), PsiSpec::L2(1.3)}) {
    const double step = 0.7;
    const Eigen::VectorXd p = Prox(psi, step, v);
    const double fp = 0.5 * (p - v).squaredNorm() + step * PsiValue(psi, p);
    // every perturbation does worse
    RngStream prng(12);
    for (int t = 0; t < 200; ++t) {
      Eigen::VectorXd q = p;
      for (int i = 0; i < 6; ++i) q[i] += 0.01 * prng.NextGaussian();
      const double fq = 0.5 * (q - v).squaredNorm() + step * PsiValue(psi, q);
      CHECK(fq >= fp - 1e-12);
    }
  }
}

TEST_CASE("sample loss and gradient match the closed form") {
  const Problem prob = ToyFour();
  const Eigen::VectorXd x = Probe3();
  // row 0: a=(1,2,0), y=-1
  CHECK(prob.SampleLoss(x, 0) == doctest::Approx(0.6633966600735709).epsilon(1e-14));
  const Eigen::VectorXd g = prob.SampleGrad(x, 0);
  CHECK(g[0] == doctest::Approx(0.50502081252106).epsilon(1e-13));
  CHECK(g[1] == doctest::Approx(0.93004162504212).epsilon(1e-13));
  CHECK(g[2] == doctest::Approx(0.05).epsilon(1e-13));
  // node addressing: node 0 sample 0 is dataset row 0 under the identity split
  CHECK((prob.NodeSampleGrad(x, 0, 0) - g).norm() == 0.0);
}

TEST_CASE("objective at zero is log 2") {
  const Problem prob = ToyFour();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  CHECK(prob.SmoothValue(zero) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(prob.Objective(zero) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  const Problem l1 = ToyFour(PsiSpec::L1(0.5));
  CHECK(l1.Objective(zero) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
}

TEST_CASE("losses stay finite at extreme margins") {
  const Problem prob = ToyFour();
  Eigen::VectorXd big(3);
  big << 1e4, 1e4, 1e4;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::isfinite(prob.SampleLoss(big, i)));
    CHECK(std::isfinite(prob.SampleLoss(-big, i)));
    CHECK(prob.SampleGrad(big, i).allFinite());
    CHECK(prob.SampleGrad(-big, i).allFinite());
  }
}

TEST_CASE("gradients agree with central differences") {
  const Problem prob = ToyFour();
  const Eigen::VectorXd x = Probe3();
  const double h = 1e-6;
  for (int row = 0; row < 4; ++row) {
    const Eigen::VectorXd g = prob.SampleGrad(x, row);
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double fd = (prob.SampleLoss(xp, row) - prob.SampleLoss(xm, row)) / (2 * h);
      CHECK(g[j] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  const Eigen::VectorXd gf = prob.FullGrad(x);
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const double fd = (prob.SmoothValue(xp) - prob.SmoothValue(xm)) / (2 * h);
    CHECK(gf[j] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("node gradients average to the full gradient") {
  const Problem prob = ToyFour();
  const Eigen::VectorXd x = Probe3();
  const Eigen::VectorXd full = prob.FullGrad(x);
  Eigen::VectorXd mean_nodes = Eigen::VectorXd::Zero(3);
  for (int t = 0; t < prob.Nodes(); ++t) mean_nodes += prob.NodeFullGrad(x, t);
  mean_nodes /= prob.Nodes();
  CHECK((full - mean_nodes).norm() < 1e-14);

  std::vector<Eigen::VectorXd> per_node;
  Eigen::VectorXd mean_out;
  prob.AllNodeGrads(x, &per_node, &mean_out);
  REQUIRE(per_node.size() == 2);
  CHECK((mean_out - full).norm() < 1e-14);
  for (int t = 0; t < 2; ++t)
    CHECK((per_node[static_cast<size_t>(t)] - prob.NodeFullGrad(x, t)).norm() < 1e-14);
}

TEST_CASE("curvature constants match the reference eigensolve") {
  const Problem prob = ToyFour();
  const ProblemConstants& c = prob.Constants();
  CHECK(c.l_max == doctest::Approx(1.35).epsilon(1e-12));
  CHECK(c.l_shard == doctest::Approx(0.9952847075210475).epsilon(1e-6));
  CHECK(c.l_full == doctest::Approx(0.7088086756970251).epsilon(1e-6));
  CHECK(c.mu_f == 0.1);
  CHECK(c.mu_psi == 0.0);
  CHECK(c.mu == 0.1);
  CHECK(c.l_full <= c.l_shard * (1 + 1e-9));
  CHECK(c.l_shard <= c.l_max * (1 + 1e-9));

  const Problem l2 = ToyFour(PsiSpec::L2(0.25));
  CHECK(l2.Constants().mu_psi == 0.25);
  CHECK(l2.Constants().mu == doctest::Approx(0.35));
}

TEST_CASE("constants on a synthetic shard layout keep the ordering") {
  const Problem prob = test::MakeToyProblem();
  const ProblemConstants& c = prob.Constants();
  CHECK(c.l_full > c.mu_f);
  CHECK(c.l_full <= c.l_shard * (1 + 1e-9));
  CHECK(c.l_shard <= c.l_max * (1 + 1e-9));
}

TEST_CASE("bregman divergence respects the convexity and smoothness bounds") {
  const Problem prob = ToyFour();
  RngStream rng(3);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd a(3), b(3);
    for (int j = 0; j < 3; ++j) {
      a[j] = rng.NextGaussian();
      b[j] = rng.NextGaussian();
    }
    const double breg = prob.Bregman(a, b);
    const double dist2 = (a - b).squaredNorm();
    CHECK(breg >= 0.5 * prob.Constants().mu_f * dist2 * (1 - 1e-9));
    CHECK(breg <= 0.5 * prob.Constants().l_full * dist2 * (1 + 1e-9));
  }
}

TEST_CASE("degenerate rows do not break the constants") {
  Dataset ds = test::MakeDenseDataset({{0.0, 0.0}, {0.0, 0.0}}, {1.0, -1.0});
  Partition part = SplitBlocks({0, 1}, 1);
  const Problem prob = Problem::Build(std::move(ds), std::move(part), 0.5);
  CHECK(prob.Constants().l_max == doctest::Approx(0.5));
  CHECK(prob.Constants().l_shard == doctest::Approx(0.5));
  CHECK(prob.Constants().l_full == doctest::Approx(0.5));
}

TEST_CASE("build rejects partitions that point outside the dataset") {
  Dataset ds = test::MakeDenseDataset({{1.0}, {2.0}}, {1.0, -1.0});
  Partition bad = SplitBlocks({0, 5}, 1);
  CHECK_THROWS_AS(Problem::Build(std::move(ds), std::move(bad), 0.1),
                  std::invalid_argument);
}

TEST_CASE("rows outside the partition do not enter the objective") {
  // same dataset, one partition keeps rows {0,1}, the other all four
  Dataset ds = test::MakeDenseDataset(
      {{1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}, {-5.0, 5.0}}, {1.0, -1.0, 1.0, -1.0});
  Dataset ds2 = ds;
  const Problem small = Problem::Build(std::move(ds), SplitBlocks({0, 1}, 2), 0.1);
  const Problem all = Problem::Build(std::move(ds2), SplitBlocks({0, 1, 2, 3}, 2), 0.1);
  Eigen::VectorXd x(2);
  x << 0.4, -0.7;
  CHECK(small.SmoothValue(x) != doctest::Approx(all.SmoothValue(x)));
  // dropped rows also leave the curvature constants
  CHECK(small.Constants().l_max == doctest::Approx(0.1 + 1.0 / 4.0));
  CHECK(all.Constants().l_max == doctest::Approx(0.1 + 50.0 / 4.0));
}
