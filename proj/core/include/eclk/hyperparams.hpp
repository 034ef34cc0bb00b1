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

#ifndef ECLK_HYPERPARAMS_HPP_
#define ECLK_HYPERPARAMS_HPP_

#include "eclk/problem.hpp"

namespace eclk {

// Which compensated-error energy the analysis tracks.  kGeneral uses the
// per-node average energy and the worst-shard smoothness; kRefined uses the
// aggregate error as well and the full-average smoothness (tighter when
// shards are homogeneous, and the default for experiments).
enum class Variant { kGeneral, kRefined };

const char* VariantName(Variant v);

// Resolved step-size schedule of the accelerated loop.  Produced by
// Configure; fields are interdependent and validated as a set:
//   eta      = 1 / (3 theta1)
//   sigma1   = mu_f / (2 L1)
//   L1       = max(L4, l_full, 3 mu eta)
//   q        = theta2 / (theta2 + theta1/2)   (so theta1 + theta2 - theta2/q = theta1/2)
// with theta1 <= theta2 <= 1/2 and q in [2/3, 1).
struct HyperParams {
  double L1 = 0.0;      // curvature scale of the step
  double L4 = 0.0;      // variance-adjusted smoothness (variant dependent)
  double eta = 0.0;
  double sigma1 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double p = 0.0;       // reference refresh probability
  double q = 0.0;       // reference weight split
  double delta = 0.0;   // compressor contraction used at configure time
  double mu = 0.0;      // strong-convexity modulus used at configure time
  double t_scale = 1.0; // smoothness relaxation factor applied before resolution
  Variant variant = Variant::kRefined;

  // Throws std::invalid_argument naming the violated constraint.
  void Validate() const;
};

// Multiplies the curvature constants (l_full, l_shard, l_max) by t, leaving
// the convexity moduli alone.  t = 1 is the theory-faithful setting; t < 1
// relaxes the schedule.
ProblemConstants ScaleSmoothness(const ProblemConstants& c, double t);

// Resolves the schedule for contraction delta, refresh probability p and n
// nodes.  The variance-adjusted smoothness is
//   kGeneral: L4 = 4 l/n + 112 (1-delta) l_shard / (9 delta^2) + 56 (1-delta) l / (9 delta)
//   kRefined: L4 = 4 l/n + 784 (1-delta) l_full / (9 delta^2) + 56 (1-delta) l / (delta n)
// (l = l_max), then
//   theta2 = L4 / (2 max(l_full, L4))
//   theta1 = min(sqrt(mu/(L4 p)) theta2, theta2)   if l_full <= L4 / p
//            min(sqrt(mu/l_full), p/2)             otherwise
// and eta, L1, sigma1, q as documented on HyperParams.  t_scale is applied
// to the smoothness constants first.  Throws std::invalid_argument if any
// resulting field lands outside its admissible range.
HyperParams Configure(const ProblemConstants& c, double delta, double p, int n,
                      Variant variant, double t_scale = 1.0);

// One-step contraction factor rho of the decay guarantee
// E[energy_{k+1}] <= (1 - rho) energy_k:
//   rho = min( mu / (mu + 6 theta1 L1), theta1 + theta2 - theta2/q, p (1-q), delta/6 ).
double RateBound(const HyperParams& hp);

}  // namespace eclk

#endif  // ECLK_HYPERPARAMS_HPP_
