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

#include "eclk/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eclk/rng.hpp"

namespace eclk {

namespace {

// log(1 + exp(t)) without overflow.
double Softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

// sigma(-z) = 1 / (1 + exp(z)) without overflow.
double SigmoidNeg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

// Adds coef * row i of data into out.
void AddRow(const Dataset& data, int i, double coef, Eigen::VectorXd& out) {
  for (int p = data.row_ptr[static_cast<size_t>(i)]; p < data.row_ptr[static_cast<size_t>(i) + 1]; ++p)
    out[data.col[static_cast<size_t>(p)]] += coef * data.val[static_cast<size_t>(p)];
}

// Largest eigenvalue of M = (1/(4 m_rows)) sum_{i in rows} a_i a_i^T by
// power iteration with a residual certificate |lam_est - lam_max| <=
// ||M v - lam v||.
double GramLamMax(const Dataset& data, const std::vector<int>& rows, double tol,
                  int max_iters) {
  if (rows.empty()) return 0.0;
  const double scale = 1.0 / (4.0 * static_cast<double>(rows.size()));
  RngStream rng(0x5eed);
  Eigen::VectorXd v(data.d);
  for (int i = 0; i < data.d; ++i) v[i] = rng.NextGaussian();
  v.normalize();
  Eigen::VectorXd mv(data.d);
  double lam = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    mv.setZero();
    for (int i : rows) AddRow(data, i, scale * data.RowDot(i, v.data()), mv);
    lam = v.dot(mv);
    const double resid = (mv - lam * v).norm();
    if (resid <= tol * std::max(lam, 1e-12)) return lam;
    const double norm = mv.norm();
    if (norm == 0.0) return 0.0;  // v in the kernel; matrix is zero on its support
    v = mv / norm;
  }
  throw std::runtime_error(
      "GramLamMax: power iteration did not converge in " + std::to_string(max_iters) +
      " steps (last estimate " + std::to_string(lam) + ", rows " + std::to_string(rows.size()) + ")");
}

}  // namespace

double PsiValue(const PsiSpec& psi, const Eigen::VectorXd& x) {
  switch (psi.kind) {
    case PsiSpec::Kind::kZero: return 0.0;
    case PsiSpec::Kind::kL1: return psi.c * x.lpNorm<1>();
    case PsiSpec::Kind::kL2: return 0.5 * psi.c * x.squaredNorm();
  }
  return 0.0;
}

Eigen::VectorXd Prox(const PsiSpec& psi, double step, const Eigen::VectorXd& x) {
  switch (psi.kind) {
    case PsiSpec::Kind::kZero:
      return x;
    case PsiSpec::Kind::kL1: {
      const double thr = step * psi.c;
      Eigen::VectorXd out(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double v = x[i];
        out[i] = v > thr ? v - thr : (v < -thr ? v + thr : 0.0);
      }
      return out;
    }
    case PsiSpec::Kind::kL2:
      return x / (1.0 + step * psi.c);
  }
  return x;
}

ProblemConstants ComputeConstants(const Dataset& data, const Partition& part,
                                  double lambda, const PsiSpec& psi, double tol,
                                  int max_power_iters) {
  ProblemConstants c;
  c.mu_f = lambda;
  c.mu_psi = psi.Mu();
  c.mu = c.mu_f + c.mu_psi;

  std::vector<int> kept;
  kept.reserve(static_cast<size_t>(part.n) * static_cast<size_t>(part.m));
  double max_sq = 0.0;
  for (const auto& shard : part.shards) {
    for (int i : shard) {
      kept.push_back(i);
      max_sq = std::max(max_sq, data.RowSquaredNorm(i));
    }
  }
  c.l_max = lambda + max_sq / 4.0;
  c.l_full = lambda + GramLamMax(data, kept, tol, max_power_iters);
  double worst = 0.0;
  for (const auto& shard : part.shards)
    worst = std::max(worst, GramLamMax(data, shard, tol, max_power_iters));
  c.l_shard = lambda + worst;
  return c;
}

Problem Problem::Build(Dataset data, Partition part, double lambda, PsiSpec psi,
                       double tol, int max_power_iters) {
  if (part.n < 1 || part.m < 1) throw std::invalid_argument("Problem::Build: empty partition");
  for (const auto& shard : part.shards)
    for (int i : shard)
      if (i < 0 || i >= data.num_samples)
        throw std::invalid_argument("Problem::Build: partition row out of range");
  Problem prob(std::move(data), std::move(part), lambda, psi);
  prob.consts_ = ComputeConstants(prob.data_, prob.part_, lambda, psi, tol, max_power_iters);
  return prob;
}

double Problem::SampleLoss(const Eigen::VectorXd& x, int row) const {
  const double z = data_.y[static_cast<size_t>(row)] * data_.RowDot(row, x.data());
  return Softplus(-z) + 0.5 * lambda_ * x.squaredNorm();
}

Eigen::VectorXd Problem::SampleGrad(const Eigen::VectorXd& x, int row) const {
  const double yi = data_.y[static_cast<size_t>(row)];
  const double z = yi * data_.RowDot(row, x.data());
  Eigen::VectorXd g = lambda_ * x;
  AddRow(data_, row, -yi * SigmoidNeg(z), g);
  return g;
}

Eigen::VectorXd Problem::NodeSampleGrad(const Eigen::VectorXd& x, int node, int j) const {
  return SampleGrad(x, part_.shards[static_cast<size_t>(node)][static_cast<size_t>(j)]);
}

Eigen::VectorXd Problem::NodeFullGrad(const Eigen::VectorXd& x, int node) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(data_.d);
  const auto& shard = part_.shards[static_cast<size_t>(node)];
  for (int i : shard) {
    const double yi = data_.y[static_cast<size_t>(i)];
    const double z = yi * data_.RowDot(i, x.data());
    AddRow(data_, i, -yi * SigmoidNeg(z), g);
  }
  g /= static_cast<double>(shard.size());
  g += lambda_ * x;
  return g;
}

Eigen::VectorXd Problem::FullGrad(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(data_.d);
  for (const auto& shard : part_.shards) {
    for (int i : shard) {
      const double yi = data_.y[static_cast<size_t>(i)];
      const double z = yi * data_.RowDot(i, x.data());
      AddRow(data_, i, -yi * SigmoidNeg(z), g);
    }
  }
  g /= static_cast<double>(part_.n) * static_cast<double>(part_.m);
  g += lambda_ * x;
  return g;
}

void Problem::AllNodeGrads(const Eigen::VectorXd& x,
                           std::vector<Eigen::VectorXd>* node_grads,
                           Eigen::VectorXd* mean_grad) const {
  if (node_grads) {
    node_grads->assign(static_cast<size_t>(part_.n), Eigen::VectorXd());
    for (int t = 0; t < part_.n; ++t) (*node_grads)[static_cast<size_t>(t)] = NodeFullGrad(x, t);
    if (mean_grad) {
      Eigen::VectorXd mean = Eigen::VectorXd::Zero(data_.d);
      for (const auto& g : *node_grads) mean += g;
      *mean_grad = mean / static_cast<double>(part_.n);
    }
    return;
  }
  if (mean_grad) *mean_grad = FullGrad(x);
}

double Problem::SmoothValue(const Eigen::VectorXd& x) const {
  double acc = 0.0;
  for (const auto& shard : part_.shards) {
    for (int i : shard) {
      const double z = data_.y[static_cast<size_t>(i)] * data_.RowDot(i, x.data());
      acc += Softplus(-z);
    }
  }
  acc /= static_cast<double>(part_.n) * static_cast<double>(part_.m);
  return acc + 0.5 * lambda_ * x.squaredNorm();
}

double Problem::Objective(const Eigen::VectorXd& x) const {
  return SmoothValue(x) + PsiValue(psi_, x);
}

double Problem::Bregman(const Eigen::VectorXd& w, const Eigen::VectorXd& x) const {
  return SmoothValue(w) - SmoothValue(x) - FullGrad(x).dot(w - x);
}

}  // namespace eclk
