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

#include "eclk/hyperparams.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eclk {

namespace {

void Require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("HyperParams: violated constraint: ") + what);
}

}  // namespace

const char* VariantName(Variant v) {
  return v == Variant::kGeneral ? "general" : "refined";
}

void HyperParams::Validate() const {
  Require(theta1 > 0.0 && theta1 < 1.0, "theta1 in (0,1)");
  Require(theta2 > 0.0 && theta2 <= 0.5, "theta2 in (0,1/2]");
  Require(theta1 + theta2 <= 1.0, "theta1 + theta2 <= 1");
  // boundary equalities (theta1 = theta2, q = 2/3) are admissible; allow one
  // part in 1e12 of rounding either way
  Require(theta1 <= theta2 * (1.0 + 1e-12), "theta1 <= theta2");
  Require(p > 0.0 && p <= 1.0, "p in (0,1]");
  Require(std::abs(eta * 3.0 * theta1 - 1.0) < 1e-9, "eta = 1/(3 theta1)");
  Require(L1 > 0.0, "L1 > 0");
  Require(L1 + 1e-12 >= L4, "L1 >= L4");
  Require(L1 * (1.0 + 1e-12) >= 3.0 * mu * eta, "L1 >= 3 mu eta");
  Require(q >= 2.0 / 3.0 - 1e-12 && q < 1.0, "q in [2/3,1)");
  Require(delta > 0.0 && delta <= 1.0, "delta in (0,1]");
  Require(sigma1 >= 0.0, "sigma1 >= 0");
}

ProblemConstants ScaleSmoothness(const ProblemConstants& c, double t) {
  if (t <= 0.0) throw std::invalid_argument("ScaleSmoothness: t must be positive");
  ProblemConstants out = c;
  out.l_full = c.l_full * t;
  out.l_shard = c.l_shard * t;
  out.l_max = c.l_max * t;
  return out;
}

HyperParams Configure(const ProblemConstants& raw, double delta, double p, int n,
                      Variant variant, double t_scale) {
  if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("Configure: delta must lie in (0,1]");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("Configure: p must lie in (0,1]");
  if (n < 1) throw std::invalid_argument("Configure: n must be >= 1");
  const ProblemConstants c = ScaleSmoothness(raw, t_scale);
  if (c.mu <= 0.0) throw std::invalid_argument("Configure: strong convexity modulus must be positive");
  if (c.l_full <= 0.0) throw std::invalid_argument("Configure: smoothness must be positive");

  const double nn = static_cast<double>(n);
  const double omd = 1.0 - delta;
  double L4;
  if (variant == Variant::kGeneral) {
    L4 = 4.0 * c.l_max / nn + 112.0 * omd * c.l_shard / (9.0 * delta * delta) +
         56.0 * omd * c.l_max / (9.0 * delta);
  } else {
    L4 = 4.0 * c.l_max / nn + 784.0 * omd * c.l_full / (9.0 * delta * delta) +
         56.0 * omd * c.l_max / (delta * nn);
  }

  HyperParams hp;
  hp.L4 = L4;
  hp.delta = delta;
  hp.p = p;
  hp.mu = c.mu;
  hp.t_scale = t_scale;
  hp.variant = variant;

  hp.theta2 = L4 / (2.0 * std::max(c.l_full, L4));
  if (c.l_full <= L4 / p) {
    hp.theta1 = std::min(std::sqrt(c.mu / (L4 * p)) * hp.theta2, hp.theta2);
  } else {
    hp.theta1 = std::min(std::sqrt(c.mu / c.l_full), p / 2.0);
  }
  hp.eta = 1.0 / (3.0 * hp.theta1);
  hp.L1 = std::max({L4, c.l_full, 3.0 * c.mu * hp.eta});
  hp.sigma1 = c.mu_f / (2.0 * hp.L1);
  hp.q = hp.theta2 / (hp.theta2 + hp.theta1 / 2.0);

  hp.Validate();
  return hp;
}

double RateBound(const HyperParams& hp) {
  return std::min({hp.mu / (hp.mu + 6.0 * hp.theta1 * hp.L1),
                   hp.theta1 + hp.theta2 - hp.theta2 / hp.q,
                   hp.p * (1.0 - hp.q),
                   hp.delta / 6.0});
}

}  // namespace eclk
