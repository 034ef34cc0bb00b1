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

#ifndef ECLK_OPTIMIZER_HPP_
#define ECLK_OPTIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eclk/comm.hpp"
#include "eclk/compressor.hpp"
#include "eclk/hyperparams.hpp"
#include "eclk/problem.hpp"
#include "eclk/rng.hpp"
#include "eclk/trace.hpp"

namespace eclk {

enum class Method { kEclk, kEclkFull, kEcsgd, kEcgd, kLKatyusha };

const char* MethodName(Method m);
Method ParseMethod(const std::string& name);  // throws std::invalid_argument

// Shared iterate state of the simulated cluster.  x/y/z/w are the
// accelerated iterates, e the per-node compensation errors, u the flag of
// the pending reference broadcast (true at iteration 0).  grad_w caches the
// mean reference gradient; node_grad_w additionally caches the per-node
// reference gradients for the variant that differences full node gradients.
struct GlobalState {
  std::int64_t k = 0;
  Eigen::VectorXd x, y, z, w;
  Eigen::VectorXd grad_w;
  std::vector<Eigen::VectorXd> node_grad_w;
  std::vector<Eigen::VectorXd> e;
  bool u = true;
};

// All iterates at x0 (zero by default), errors at zero, reference caches
// filled for the methods that use them.
GlobalState InitState(const Problem& prob, Method method,
                      std::optional<Eigen::VectorXd> x0 = std::nullopt);

// Independent randomness lanes of one run, derived from one master seed:
// per-node index sampling, per-node compressor noise, one shared refresh
// coin.  Fixed stream ids keep runs reproducible and method variants
// comparable draw-for-draw.
struct StepRngs {
  std::vector<RngStream> sample;
  std::vector<RngStream> comp;
  RngStream coin;
};

StepRngs MakeStepRngs(std::uint64_t seed, int n);

// Optional capture of one step's internals (variance and recursion audits).
struct StepDebug {
  std::vector<Eigen::VectorXd> g_node;  // per-node search directions
  Eigen::VectorXd g_mean;
  Eigen::VectorXd gtilde_mean;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterate norms beyond this are treated as divergence.
inline constexpr double kDivergenceNorm = 1e12;

// One iteration of the compensated accelerated loop:
//   per node:  g_t     = grad difference between x^k and the reference w^k
//              msg_t   = Q((eta/L1) g_t + e_t),  e_t += (eta/L1) g_t - msg_t
//   z^{k+1} = prox_{eta/((1+eta sigma1) L1) psi}(
//               (sigma1 eta x^k + z^k - mean msg - (eta/L1) grad_w) / (1+eta sigma1))
//   y^{k+1} = x^k + theta1 (z^{k+1} - z^k)
//   w^{k+1} = y^k on a p-coin hit (note: the previous y), else w^k
//   x^{k+1} = theta1 z^{k+1} + theta2 w^{k+1} + (1 - theta1 - theta2) y^{k+1}
// With full_node_grads the per-node direction differences whole node
// gradients instead of one sampled row (no index randomness consumed).
// Charges the ledger (message + coin + reference broadcast when u is
// pending) if one is given.  Throws DivergenceError when the new iterate
// leaves the finite ball of radius kDivergenceNorm.
void EclkStep(const Problem& prob, const HyperParams& hp, const CompressorSpec& comp,
              bool full_node_grads, GlobalState& st, StepRngs& rngs,
              CommLedger* ledger = nullptr, StepDebug* dbg = nullptr);

// Uncompressed special case: same trajectory as EclkStep with the identity
// compressor, by construction.
void LKatyushaStep(const Problem& prob, const HyperParams& hp, GlobalState& st,
                   StepRngs& rngs, CommLedger* ledger = nullptr,
                   StepDebug* dbg = nullptr);

// Compensated (stochastic) gradient descent baseline:
//   per node: g_t = sampled (or full, with full_node_grads) node gradient
//             msg_t = Q(gamma g_t + e_t),  e_t += gamma g_t - msg_t
//   x^{k+1} = prox_{gamma psi}(x^k - mean msg).
// Ledger charge is the message alone (no coin, no reference broadcasts).
void EcsgdStep(const Problem& prob, double gamma, const CompressorSpec& comp,
               bool full_node_grads, GlobalState& st, StepRngs& rngs,
               CommLedger* ledger = nullptr, StepDebug* dbg = nullptr);

struct RunOptions {
  Method method = Method::kEclk;
  CompressorSpec comp;            // ignored for the uncompressed method
  HyperParams hp;                 // accelerated family
  double gamma = 0.0;             // descent baselines
  std::int64_t max_iters = 0;
  double target = -1.0;           // stop when subopt <= target (if > 0)
  std::uint64_t seed = 1;
  double p_star = 0.0;            // oracle objective value; 0 records raw P(x)
  bool record_lyapunov = false;   // needs x_star
  std::optional<Eigen::VectorXd> x_star;
  std::optional<Eigen::VectorXd> x0;
  std::int64_t dense_until = 1000;  // record every iteration up to here ...
  std::int64_t stride = 10;         // ... then every stride-th, plus the last
};

// Runs one cell to its budget or target.  Objectives are evaluated only at
// recorded rows, so the target stop has the granularity of the thinning
// schedule.  Divergence is reported in the returned status, not thrown.
Trace Run(const Problem& prob, const RunOptions& opt);

}  // namespace eclk

#endif  // ECLK_OPTIMIZER_HPP_
