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

#include "eclk/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eclk/analysis.hpp"

namespace eclk {

namespace {

void GuardFinite(const Eigen::VectorXd& x) {
  if (!x.allFinite() || x.norm() > kDivergenceNorm)
    throw DivergenceError("iterate norm exceeded " + std::to_string(kDivergenceNorm) +
                          " or became non-finite");
}

bool UsesReference(Method m) {
  return m == Method::kEclk || m == Method::kEclkFull || m == Method::kLKatyusha;
}

}  // namespace

const char* MethodName(Method m) {
  switch (m) {
    case Method::kEclk: return "eclk";
    case Method::kEclkFull: return "eclk-full";
    case Method::kEcsgd: return "ecsgd";
    case Method::kEcgd: return "ecgd";
    case Method::kLKatyusha: return "lkatyusha";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  if (name == "eclk") return Method::kEclk;
  if (name == "eclk-full") return Method::kEclkFull;
  if (name == "ecsgd") return Method::kEcsgd;
  if (name == "ecgd") return Method::kEcgd;
  if (name == "lkatyusha") return Method::kLKatyusha;
  throw std::invalid_argument("unknown method: " + name);
}

GlobalState InitState(const Problem& prob, Method method,
                      std::optional<Eigen::VectorXd> x0) {
  GlobalState st;
  const int d = prob.Dim();
  st.x = x0 ? *x0 : Eigen::VectorXd::Zero(d);
  if (st.x.size() != d) throw std::invalid_argument("InitState: x0 dimension mismatch");
  st.y = st.x;
  st.z = st.x;
  st.w = st.x;
  st.e.assign(static_cast<size_t>(prob.Nodes()), Eigen::VectorXd::Zero(d));
  st.u = true;
  if (UsesReference(method)) {
    if (method == Method::kEclkFull) {
      prob.AllNodeGrads(st.w, &st.node_grad_w, &st.grad_w);
    } else {
      st.grad_w = prob.FullGrad(st.w);
    }
  }
  return st;
}

StepRngs MakeStepRngs(std::uint64_t seed, int n) {
  StepRngs rngs{{}, {}, RngStream::Derive(seed, 1)};
  rngs.sample.reserve(static_cast<size_t>(n));
  rngs.comp.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    rngs.sample.push_back(RngStream::Derive(seed, 0x100 + static_cast<std::uint64_t>(t)));
    rngs.comp.push_back(RngStream::Derive(seed, 0x10000 + static_cast<std::uint64_t>(t)));
  }
  return rngs;
}

void EclkStep(const Problem& prob, const HyperParams& hp, const CompressorSpec& comp,
              bool full_node_grads, GlobalState& st, StepRngs& rngs,
              CommLedger* ledger, StepDebug* dbg) {
  const int n = prob.Nodes();
  const int d = prob.Dim();
  const int m = prob.SamplesPerNode();
  const double scale = hp.eta / hp.L1;

  if (ledger) ledger->Charge(st.k, MessageBits(comp), st.u);
  if (dbg) {
    dbg->g_node.clear();
    dbg->g_mean = Eigen::VectorXd::Zero(d);
  }

  // 1. compensated compressed messages, one per node
  Eigen::VectorXd msg_mean = Eigen::VectorXd::Zero(d);
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd g;
    if (full_node_grads) {
      g = prob.NodeFullGrad(st.x, t) - st.node_grad_w[static_cast<size_t>(t)];
    } else {
      const int j = static_cast<int>(rngs.sample[static_cast<size_t>(t)].NextBelow(m));
      g = prob.NodeSampleGrad(st.x, t, j) - prob.NodeSampleGrad(st.w, t, j);
    }
    Eigen::VectorXd v = scale * g + st.e[static_cast<size_t>(t)];
    Eigen::VectorXd msg = Apply(comp, v, rngs.comp[static_cast<size_t>(t)]);
    st.e[static_cast<size_t>(t)] = v - msg;
    msg_mean += msg;
    if (dbg) {
      dbg->g_mean += g;
      dbg->g_node.push_back(std::move(g));
    }
  }
  msg_mean /= static_cast<double>(n);
  if (dbg) {
    dbg->g_mean /= static_cast<double>(n);
    dbg->gtilde_mean = msg_mean;
  }

  // 2. shared refresh coin for the next reference
  const bool u_next = rngs.coin.Bernoulli(hp.p);

  // 3. proximal step on z
  const double denom = 1.0 + hp.eta * hp.sigma1;
  const Eigen::VectorXd arg =
      (hp.eta * hp.sigma1 * st.x + st.z - msg_mean - scale * st.grad_w) / denom;
  Eigen::VectorXd z_new = Prox(prob.Psi(), hp.eta / (denom * hp.L1), arg);

  // 4. iterate couplings; the new reference is the PREVIOUS y
  Eigen::VectorXd y_new = st.x + hp.theta1 * (z_new - st.z);
  if (u_next) st.w = st.y;
  st.x = hp.theta1 * z_new + hp.theta2 * st.w + (1.0 - hp.theta1 - hp.theta2) * y_new;
  st.y = std::move(y_new);
  st.z = std::move(z_new);

  // 5. refresh the cached reference gradients
  if (u_next) {
    if (full_node_grads) {
      prob.AllNodeGrads(st.w, &st.node_grad_w, &st.grad_w);
    } else {
      st.grad_w = prob.FullGrad(st.w);
    }
  }

  st.u = u_next;
  ++st.k;
  GuardFinite(st.x);
}

void LKatyushaStep(const Problem& prob, const HyperParams& hp, GlobalState& st,
                   StepRngs& rngs, CommLedger* ledger, StepDebug* dbg) {
  EclkStep(prob, hp, CompressorSpec::Identity(prob.Dim()), false, st, rngs, ledger, dbg);
}

void EcsgdStep(const Problem& prob, double gamma, const CompressorSpec& comp,
               bool full_node_grads, GlobalState& st, StepRngs& rngs,
               CommLedger* ledger, StepDebug* dbg) {
  const int n = prob.Nodes();
  const int d = prob.Dim();
  const int m = prob.SamplesPerNode();

  if (ledger) ledger->ChargeMessageOnly(st.k, MessageBits(comp));
  if (dbg) {
    dbg->g_node.clear();
    dbg->g_mean = Eigen::VectorXd::Zero(d);
  }

  Eigen::VectorXd msg_mean = Eigen::VectorXd::Zero(d);
  for (int t = 0; t < n; ++t) {
    Eigen::VectorXd g;
    if (full_node_grads) {
      g = prob.NodeFullGrad(st.x, t);
    } else {
      const int j = static_cast<int>(rngs.sample[static_cast<size_t>(t)].NextBelow(m));
      g = prob.NodeSampleGrad(st.x, t, j);
    }
    Eigen::VectorXd v = gamma * g + st.e[static_cast<size_t>(t)];
    Eigen::VectorXd msg = Apply(comp, v, rngs.comp[static_cast<size_t>(t)]);
    st.e[static_cast<size_t>(t)] = v - msg;
    msg_mean += msg;
    if (dbg) {
      dbg->g_mean += g;
      dbg->g_node.push_back(std::move(g));
    }
  }
  msg_mean /= static_cast<double>(n);
  if (dbg) dbg->gtilde_mean = msg_mean;

  st.x = Prox(prob.Psi(), gamma, st.x - msg_mean);
  ++st.k;
  GuardFinite(st.x);
}

Trace Run(const Problem& prob, const RunOptions& opt) {
  const int n = prob.Nodes();
  const bool accelerated = UsesReference(opt.method);
  const bool full_grads = opt.method == Method::kEclkFull || opt.method == Method::kEcgd;
  const CompressorSpec comp = opt.method == Method::kLKatyusha
                                  ? CompressorSpec::Identity(prob.Dim())
                                  : opt.comp;
  comp.Validate();
  if (comp.d != prob.Dim()) throw std::invalid_argument("Run: compressor dimension mismatch");
  if (opt.record_lyapunov && (!opt.x_star || !accelerated))
    throw std::invalid_argument("Run: decay tracking needs the accelerated family and x_star");

  GlobalState st = InitState(prob, opt.method, opt.x0);
  StepRngs rngs = MakeStepRngs(opt.seed, n);
  CommLedger ledger(prob.Dim());

  Trace trace;
  const auto record = [&](const GlobalState& s) {
    TraceRow row;
    row.iter = s.k;
    row.subopt = prob.Objective(s.x) - opt.p_star;
    row.cum_bits_node = ledger.Cumulative();
    row.cum_bits_total = ledger.Cumulative() * n;
    row.lyapunov = std::numeric_limits<double>::quiet_NaN();
    if (opt.record_lyapunov)
      row.lyapunov = Lyapunov(s, opt.hp, prob, *opt.x_star, opt.p_star).total;
    double avg = 0.0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(prob.Dim());
    for (const auto& e : s.e) {
      avg += e.squaredNorm();
      mean += e;
    }
    row.err_avg = avg / static_cast<double>(n);
    row.err_agg = (mean / static_cast<double>(n)).squaredNorm();
    row.w_updated = s.u;
    trace.rows.push_back(row);
    return row.subopt;
  };

  double subopt = record(st);
  bool hit_target = opt.target > 0.0 && subopt <= opt.target;
  while (!hit_target && st.k < opt.max_iters) {
    try {
      if (accelerated) {
        EclkStep(prob, opt.hp, comp, full_grads, st, rngs, &ledger, nullptr);
      } else {
        EcsgdStep(prob, opt.gamma, comp, full_grads, st, rngs, &ledger, nullptr);
      }
    } catch (const DivergenceError& err) {
      trace.status = Trace::Status::kDiverged;
      trace.message = err.what();
      break;
    }
    const bool due = st.k <= opt.dense_until || st.k % opt.stride == 0 ||
                     st.k == opt.max_iters;
    if (due) {
      subopt = record(st);
      hit_target = opt.target > 0.0 && subopt <= opt.target;
    }
  }
  if (trace.status == Trace::Status::kOk && trace.rows.back().iter != st.k) record(st);
  trace.iters_run = st.k;
  trace.final_subopt = trace.rows.back().subopt;
  return trace;
}

}  // namespace eclk
