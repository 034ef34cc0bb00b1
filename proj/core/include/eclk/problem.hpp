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

#ifndef ECLK_PROBLEM_HPP_
#define ECLK_PROBLEM_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "eclk/dataset.hpp"

namespace eclk {

// Nonsmooth part psi of the composite objective.
struct PsiSpec {
  enum class Kind { kZero, kL1, kL2 };
  Kind kind = Kind::kZero;
  double c = 0.0;  // l1 weight, or the l2 strong-convexity weight

  static PsiSpec Zero() { return {Kind::kZero, 0.0}; }
  static PsiSpec L1(double c) { return {Kind::kL1, c}; }
  static PsiSpec L2(double mu_psi) { return {Kind::kL2, mu_psi}; }

  // Strong-convexity modulus contributed by psi.
  double Mu() const { return kind == Kind::kL2 ? c : 0.0; }
};

double PsiValue(const PsiSpec& psi, const Eigen::VectorXd& x);

// prox_{step * psi}(x).  Zero: identity.  L1(c): soft threshold at step*c.
// L2(mu): scale by 1/(1 + step*mu).
Eigen::VectorXd Prox(const PsiSpec& psi, double step, const Eigen::VectorXd& x);

// Curvature and convexity constants of the sharded problem:
//   l_max   max over kept samples of (lambda + ||a_i||^2 / 4)
//   l_shard max over shards of lambda + lam_max(shard Gram / (4 m))
//   l_full  lambda + lam_max(full Gram / (4 n m))
// so l_full <= l_shard <= l_max up to eigensolver tolerance.  mu is the
// strong-convexity modulus of the whole objective (smooth part + psi).
struct ProblemConstants {
  double l_full = 0.0;   // smoothness of the average f
  double l_shard = 0.0;  // worst shard-average smoothness
  double l_max = 0.0;    // worst per-sample smoothness
  double mu_f = 0.0;     // = lambda
  double mu_psi = 0.0;
  double mu = 0.0;       // mu_f + mu_psi
};

// Regularized logistic-regression task sharded across n nodes:
//   P(x) = (1/n) sum_t f_t(x) + psi(x),
//   f_t(x) = (1/m) sum_{i in shard t} [ log(1 + exp(-y_i <a_i, x>)) + (lambda/2) ||x||^2 ].
// Rows dropped by the partition do not enter the objective.  Immutable after
// Build; all accessors are const and thread-compatible.
class Problem {
 public:
  // Computes the constants eagerly (power iteration on the Gram operators,
  // relative tolerance tol, at most max_power_iters steps; throws
  // std::runtime_error if the eigensolve stalls).
  static Problem Build(Dataset data, Partition part, double lambda,
                       PsiSpec psi = PsiSpec::Zero(), double tol = 1e-6,
                       int max_power_iters = 10000);

  int Dim() const { return data_.d; }
  int Nodes() const { return part_.n; }
  int SamplesPerNode() const { return part_.m; }
  double Lambda() const { return lambda_; }
  const PsiSpec& Psi() const { return psi_; }
  const ProblemConstants& Constants() const { return consts_; }
  const Dataset& Data() const { return data_; }
  const Partition& Part() const { return part_; }

  // Loss and gradient of one dataset row (regularizer included).
  double SampleLoss(const Eigen::VectorXd& x, int row) const;
  Eigen::VectorXd SampleGrad(const Eigen::VectorXd& x, int row) const;
  // Same, addressed as sample j of node t.
  Eigen::VectorXd NodeSampleGrad(const Eigen::VectorXd& x, int node, int j) const;

  // grad f_t: average gradient over node t's shard.
  Eigen::VectorXd NodeFullGrad(const Eigen::VectorXd& x, int node) const;
  // grad f: average over all kept rows.  Identical to the mean of the n
  // node gradients.
  Eigen::VectorXd FullGrad(const Eigen::VectorXd& x) const;
  // Per-node gradients and their mean in one sweep over the data.
  void AllNodeGrads(const Eigen::VectorXd& x, std::vector<Eigen::VectorXd>* node_grads,
                    Eigen::VectorXd* mean_grad) const;

  // Smooth part f(x); average over kept rows.
  double SmoothValue(const Eigen::VectorXd& x) const;
  // Full objective f(x) + psi(x).
  double Objective(const Eigen::VectorXd& x) const;
  // Bregman divergence of f:  f(w) - f(x) - <grad f(x), w - x>.
  double Bregman(const Eigen::VectorXd& w, const Eigen::VectorXd& x) const;

 private:
  Problem(Dataset data, Partition part, double lambda, PsiSpec psi)
      : data_(std::move(data)), part_(std::move(part)), lambda_(lambda), psi_(psi) {}

  Dataset data_;
  Partition part_;
  double lambda_ = 0.0;
  PsiSpec psi_;
  ProblemConstants consts_;
};

// Standalone constants computation (what Build runs internally).
ProblemConstants ComputeConstants(const Dataset& data, const Partition& part,
                                  double lambda, const PsiSpec& psi,
                                  double tol = 1e-6, int max_power_iters = 10000);

}  // namespace eclk

#endif  // ECLK_PROBLEM_HPP_
