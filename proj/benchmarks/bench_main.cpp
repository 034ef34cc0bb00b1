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

#include <benchmark/benchmark.h>

#include <memory>

#include "eclk/analysis.hpp"
#include "eclk/optimizer.hpp"
#include "eclk/synth.hpp"

namespace {

using namespace eclk;

Eigen::VectorXd BenchVector(int d) {
  RngStream rng(42);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.NextGaussian();
  return v;
}

void BM_TopK(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Eigen::VectorXd v = BenchVector(d);
  RngStream rng(7);
  for (auto _ : state) {
    CompressedMsg msg = Compress(CompressorSpec::TopK(d, k), v, rng);
    benchmark::DoNotOptimize(msg);
  }
}
BENCHMARK(BM_TopK)->Args({112, 1})->Args({112, 8})->Args({4096, 64});

void BM_RandK(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Eigen::VectorXd v = BenchVector(d);
  RngStream rng(7);
  for (auto _ : state) {
    CompressedMsg msg = Compress(CompressorSpec::RandK(d, k), v, rng);
    benchmark::DoNotOptimize(msg);
  }
}
BENCHMARK(BM_RandK)->Args({112, 1})->Args({112, 8})->Args({4096, 64});

void BM_Dither(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  const Eigen::VectorXd v = BenchVector(d);
  RngStream rng(7);
  for (auto _ : state) {
    CompressedMsg msg = Compress(CompressorSpec::Dithering(d, s), v, rng);
    benchmark::DoNotOptimize(msg);
  }
}
BENCHMARK(BM_Dither)->Args({112, 2})->Args({4096, 8});

const Problem& BenchProblem() {
  static const Problem* prob = [] {
    SynthSpec spec = MushroomsLikeSpec();
    Dataset ds = MakeSynthDataset(spec);
    Partition part = MakePartition(ds.num_samples, 20, 7);
    return new Problem(
        Problem::Build(std::move(ds), std::move(part), 1e-3));
  }();
  return *prob;
}

void BM_FullGrad(benchmark::State& state) {
  const Problem& prob = BenchProblem();
  const Eigen::VectorXd x = BenchVector(prob.Dim());
  for (auto _ : state) {
    Eigen::VectorXd g = prob.FullGrad(x);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_FullGrad);

void BM_Objective(benchmark::State& state) {
  const Problem& prob = BenchProblem();
  const Eigen::VectorXd x = BenchVector(prob.Dim());
  for (auto _ : state) benchmark::DoNotOptimize(prob.Objective(x));
}
BENCHMARK(BM_Objective);

void BM_EclkStep(benchmark::State& state) {
  const Problem& prob = BenchProblem();
  HyperParams hp = Configure(prob.Constants(), 1.0 / prob.Dim(), 1.0,
                             prob.Nodes(), Variant::kRefined);
  const CompressorSpec comp = CompressorSpec::TopK(prob.Dim(), 1);
  GlobalState st = InitState(prob, Method::kEclk);
  StepRngs rngs = MakeStepRngs(3, prob.Nodes());
  CommLedger ledger(prob.Dim());
  for (auto _ : state) {
    EclkStep(prob, hp, comp, false, st, rngs, &ledger, nullptr);
    benchmark::DoNotOptimize(st.x);
  }
}
BENCHMARK(BM_EclkStep);

}  // namespace

BENCHMARK_MAIN();
