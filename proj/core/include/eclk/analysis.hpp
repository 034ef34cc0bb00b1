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

#ifndef ECLK_ANALYSIS_HPP_
#define ECLK_ANALYSIS_HPP_

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "eclk/optimizer.hpp"

namespace eclk {

// Error-corrected views of the iterates: with e the mean compensation error,
//   x_tilde = x - e / (1 + eta sigma1),   z_tilde = z - e / (1 + eta sigma1).
// These are the quantities the decay analysis actually contracts; they
// coincide with x and z whenever the compressor is exact.
struct PerturbedIterates {
  Eigen::VectorXd e_mean;
  Eigen::VectorXd x_tilde;
  Eigen::VectorXd z_tilde;
};

PerturbedIterates ComputePerturbed(const GlobalState& st, const HyperParams& hp);

// Decay functional of a state.  Common part:
//   dist  = (L1 + eta mu / 2) / (2 eta) ||z_tilde - x*||^2
//   y_gap = (P(y) - P*) / theta1
//   w_gap = theta2 / (p q theta1) (P(w) - P*)
// Error part, by variant:
//   general: err_node = 4 L1/(delta eta) * (1/n) sum ||e_t||^2, err_agg = 0
//   refined: err_agg  = 4 L1/(delta eta) * ||mean e||^2,
//            err_node = 28 L1 (1-delta)/(delta eta n) * (1/n) sum ||e_t||^2
// total is the sum of all terms; the decay guarantee is
// E[total_{k+1}] <= (1 - RateBound(hp)) total_k.
struct LyapunovTerms {
  double dist = 0.0;
  double y_gap = 0.0;
  double w_gap = 0.0;
  double err_node = 0.0;
  double err_agg = 0.0;
  double total = 0.0;
};

LyapunovTerms Lyapunov(const GlobalState& st, const HyperParams& hp,
                       const Problem& prob, const Eigen::VectorXd& x_star,
                       double p_star);

// Predicted iteration count to reach accuracy eps, up to constants:
//   general: (1/delta + 1/p + sqrt(l_full/mu) + sqrt(l_max/(mu p n))
//             + (1/delta) sqrt((1-delta) l_shard/(mu p))
//             + sqrt((1-delta) l_max/(mu p delta))) log(1/eps)
//   refined: (1/delta + 1/p + sqrt(l_full/mu) + sqrt(l_max/(mu p n))
//             + (1/delta) sqrt((1-delta) l_full/(mu p))
//             + sqrt((1-delta) l_max/(mu p delta n))) log(1/eps)
double IterationComplexity(const ProblemConstants& c, double delta, double p,
                           int n, Variant variant, double eps);

// High-accuracy solution of one problem: the uncompressed accelerated loop
// at full refresh probability, run to its budget or to first-order residual
// 1e-12, whichever comes first.  residual is the prox-gradient residual at
// the returned point (equals ||grad f|| when psi is zero); warned flags a
// residual above 1e-6.
struct OracleResult {
  Eigen::VectorXd x_star;
  double p_star = 0.0;
  double residual = 0.0;
  std::int64_t iters = 0;
  bool warned = false;
};

inline constexpr std::uint64_t kOracleSeed = 0x0eac1e;

OracleResult SolveOracle(const Problem& prob, std::int64_t budget = 100000,
                         std::uint64_t seed = kOracleSeed);

// Prox-gradient residual ||x - prox_{g psi}(x - g grad f(x))|| / g at
// g = 1/l_full.
double FirstOrderResidual(const Problem& prob, const Eigen::VectorXd& x);

// Disk cache for oracle results, keyed by dataset content, lambda, node
// count, partition seed, psi, solver seed and budget.  Load returns false
// on a missing or mismatched entry.
std::string OracleCacheStem(const Problem& prob, std::int64_t budget,
                            std::uint64_t seed);
bool LoadOracle(const std::string& dir, const Problem& prob, std::int64_t budget,
                std::uint64_t seed, OracleResult* out);
void StoreOracle(const std::string& dir, const Problem& prob, std::int64_t budget,
                 std::uint64_t seed, const OracleResult& result);

// Cache-through convenience: load if present, else solve and store.
OracleResult SolveOracleCached(const Problem& prob, const std::string& cache_dir,
                               std::int64_t budget = 100000,
                               std::uint64_t seed = kOracleSeed);

}  // namespace eclk

#endif  // ECLK_ANALYSIS_HPP_
