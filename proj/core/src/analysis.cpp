// Copyright 2026 The eclk Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eclk/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace eclk {

namespace {

constexpr char kOracleMagic[8] = {'E', 'C', 'L', 'K', 'O', 'R', 'C', '1'};

std::uint64_t MixU64(std::uint64_t h, std::uint64_t v) {
  h ^= SplitMix64(v);
  h *= 0x100000001b3ULL;
  return h;
}

std::uint64_t DoubleKey(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

Eigen::VectorXd MeanError(const GlobalState& st) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(st.x.size());
  for (const auto& e : st.e) mean += e;
  return mean / static_cast<double>(st.e.size());
}

}  // namespace

PerturbedIterates ComputePerturbed(const GlobalState& st, const HyperParams& hp) {
  PerturbedIterates out;
  out.e_mean = MeanError(st);
  const Eigen::VectorXd shift = out.e_mean / (1.0 + hp.eta * hp.sigma1);
  out.x_tilde = st.x - shift;
  out.z_tilde = st.z - shift;
  return out;
}

LyapunovTerms Lyapunov(const GlobalState& st, const HyperParams& hp,
                       const Problem& prob, const Eigen::VectorXd& x_star,
                       double p_star) {
  LyapunovTerms terms;
  const PerturbedIterates pert = ComputePerturbed(st, hp);
  terms.dist = (hp.L1 + hp.eta * hp.mu / 2.0) / (2.0 * hp.eta) *
               (pert.z_tilde - x_star).squaredNorm();
  terms.y_gap = (prob.Objective(st.y) - p_star) / hp.theta1;
  terms.w_gap = hp.theta2 / (hp.p * hp.q * hp.theta1) * (prob.Objective(st.w) - p_star);

  double avg = 0.0;
  for (const auto& e : st.e) avg += e.squaredNorm();
  avg /= static_cast<double>(st.e.size());
  const double n = static_cast<double>(st.e.size());
  if (hp.variant == Variant::kGeneral) {
    terms.err_node = 4.0 * hp.L1 / (hp.delta * hp.eta) * avg;
  } else {
    terms.err_agg = 4.0 * hp.L1 / (hp.delta * hp.eta) * pert.e_mean.squaredNorm();
    terms.err_node = 28.0 * hp.L1 * (1.0 - hp.delta) / (hp.delta * hp.eta * n) * avg;
  }
  terms.total = terms.dist + terms.y_gap + terms.w_gap + terms.err_node + terms.err_agg;
  return terms;
}

double IterationComplexity(const ProblemConstants& c, double delta, double p,
                           int n, Variant variant, double eps) {
  if (delta <= 0.0 || delta > 1.0 || p <= 0.0 || p > 1.0 || n < 1 || eps <= 0.0 ||
      eps >= 1.0 || c.mu <= 0.0)
    throw std::invalid_argument("IterationComplexity: argument out of range");
  const double nn = static_cast<double>(n);
  const double omd = 1.0 - delta;
  double k = 1.0 / delta + 1.0 / p + std::sqrt(c.l_full / c.mu) +
             std::sqrt(c.l_max / (c.mu * p * nn));
  if (variant == Variant::kGeneral) {
    k += std::sqrt(omd * c.l_shard / (c.mu * p)) / delta +
         std::sqrt(omd * c.l_max / (c.mu * p * delta));
  } else {
    k += std::sqrt(omd * c.l_full / (c.mu * p)) / delta +
         std::sqrt(omd * c.l_max / (c.mu * p * delta * nn));
  }
  return k * std::log(1.0 / eps);
}

double FirstOrderResidual(const Problem& prob, const Eigen::VectorXd& x) {
  const double g = 1.0 / prob.Constants().l_full;
  const Eigen::VectorXd step = x - g * prob.FullGrad(x);
  return (x - Prox(prob.Psi(), g, step)).norm() / g;
}

OracleResult SolveOracle(const Problem& prob, std::int64_t budget,
                         std::uint64_t seed) {
  const HyperParams hp =
      Configure(prob.Constants(), 1.0, 1.0, prob.Nodes(), Variant::kRefined, 1.0);
  GlobalState st = InitState(prob, Method::kLKatyusha);
  StepRngs rngs = MakeStepRngs(seed, prob.Nodes());
  OracleResult result;
  result.residual = FirstOrderResidual(prob, st.x);
  // Residual is rechecked periodically; well below certification needs, the
  // remaining budget cannot change the reported solution meaningfully.
  const std::int64_t check_every = 1000;
  while (st.k < budget && result.residual > 1e-12) {
    LKatyushaStep(prob, hp, st, rngs);
    if (st.k % check_every == 0 || st.k == budget)
      result.residual = FirstOrderResidual(prob, st.x);
  }
  result.x_star = st.x;
  result.p_star = prob.Objective(st.x);
  result.iters = st.k;
  result.residual = FirstOrderResidual(prob, st.x);
  result.warned = result.residual > 1e-6;
  return result;
}

std::string OracleCacheStem(const Problem& prob, std::int64_t budget,
                            std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = MixU64(h, prob.Data().Hash());
  h = MixU64(h, DoubleKey(prob.Lambda()));
  h = MixU64(h, static_cast<std::uint64_t>(prob.Nodes()));
  h = MixU64(h, prob.Part().seed);
  h = MixU64(h, static_cast<std::uint64_t>(prob.Psi().kind));
  h = MixU64(h, DoubleKey(prob.Psi().c));
  h = MixU64(h, static_cast<std::uint64_t>(budget));
  h = MixU64(h, seed);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "oracle-%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool LoadOracle(const std::string& dir, const Problem& prob, std::int64_t budget,
                std::uint64_t seed, OracleResult* out) {
  const std::string stem = (std::filesystem::path(dir) / OracleCacheStem(prob, budget, seed)).string();
  std::ifstream in(stem + ".bin", std::ios::binary);
  if (!in) return false;
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kOracleMagic, 8) != 0) return false;
  std::int64_t d = 0;
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  if (!in || d != prob.Dim()) return false;
  OracleResult result;
  result.x_star.resize(d);
  in.read(reinterpret_cast<char*>(result.x_star.data()), d * static_cast<std::int64_t>(sizeof(double)));
  in.read(reinterpret_cast<char*>(&result.p_star), sizeof(result.p_star));
  in.read(reinterpret_cast<char*>(&result.residual), sizeof(result.residual));
  in.read(reinterpret_cast<char*>(&result.iters), sizeof(result.iters));
  if (!in) return false;
  result.warned = result.residual > 1e-6;
  *out = result;
  return true;
}

void StoreOracle(const std::string& dir, const Problem& prob, std::int64_t budget,
                 std::uint64_t seed, const OracleResult& result) {
  std::filesystem::create_directories(dir);
  const std::string stem = (std::filesystem::path(dir) / OracleCacheStem(prob, budget, seed)).string();
  {
    std::ofstream out(stem + ".bin", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write oracle cache: " + stem + ".bin");
    out.write(kOracleMagic, 8);
    const std::int64_t d = result.x_star.size();
    out.write(reinterpret_cast<const char*>(&d), sizeof(d));
    out.write(reinterpret_cast<const char*>(result.x_star.data()),
              d * static_cast<std::int64_t>(sizeof(double)));
    out.write(reinterpret_cast<const char*>(&result.p_star), sizeof(result.p_star));
    out.write(reinterpret_cast<const char*>(&result.residual), sizeof(result.residual));
    out.write(reinterpret_cast<const char*>(&result.iters), sizeof(result.iters));
  }
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "dataset_hash: %016llx\nlambda: %.17g\nnodes: %d\npartition_seed: %llu\n"
                "psi: %d %.17g\nsolver_seed: %llu\nbudget: %lld\niters: %lld\n"
                "residual: %.17g\nobjective: %.17g\nwarned: %d\n",
                static_cast<unsigned long long>(prob.Data().Hash()), prob.Lambda(),
                prob.Nodes(), static_cast<unsigned long long>(prob.Part().seed),
                static_cast<int>(prob.Psi().kind), prob.Psi().c,
                static_cast<unsigned long long>(seed), static_cast<long long>(budget),
                static_cast<long long>(result.iters), result.residual, result.p_star,
                result.warned ? 1 : 0);
  std::ofstream manifest(stem + ".txt");
  if (!manifest) throw std::runtime_error("cannot write oracle manifest: " + stem + ".txt");
  manifest << buf;
}

OracleResult SolveOracleCached(const Problem& prob, const std::string& cache_dir,
                               std::int64_t budget, std::uint64_t seed) {
  OracleResult result;
  if (LoadOracle(cache_dir, prob, budget, seed, &result)) return result;
  result = SolveOracle(prob, budget, seed);
  StoreOracle(cache_dir, prob, budget, seed, result);
  return result;
}

}  // namespace eclk
