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

#ifndef ECLK_EXPERIMENT_HPP_
#define ECLK_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "eclk/analysis.hpp"
#include "eclk/optimizer.hpp"
#include "eclk/synth.hpp"

namespace eclk {

// Flat experiment description; fields map one-to-one onto config-file keys
// and command-line flags (later sources override earlier ones).
struct ExperimentConfig {
  std::string dataset = "mushrooms-like";  // file path or bundled preset name
  int nodes = 20;
  double lambda = 1e-3;
  std::string psi = "zero";  // zero | l1 | l2
  double psi_c = 0.0;
  std::uint64_t partition_seed = 7;
  std::vector<std::uint64_t> seeds = {1};
  std::int64_t max_iters = 200000;
  std::int64_t oracle_budget = 100000;
  double target = 1e-6;
  std::string method = "default";  // default = three-curve comparison
  std::string compressor = "topk";
  int k = 1;
  int s = 2;
  std::string p = "auto";   // refresh probability, or "auto" for r(Q)
  double t = 1.0;           // smoothness relaxation factor
  std::string gamma = "auto";  // descent step, or "auto" to tune
  std::string variant = "refined";
  std::string out = "out";
  std::string cache;        // oracle cache dir; empty = <out>/cache
  std::int64_t dense_until = 1000;
  std::int64_t stride = 10;

  std::string CacheDir() const { return cache.empty() ? out + "/cache" : cache; }
};

// key=value per line, '#' comments, unknown keys rejected.
ExperimentConfig LoadConfigFile(const std::string& path);
// Applies one key=value pair (shared by the file loader and flag overrides);
// throws std::invalid_argument on unknown keys or bad values.
void ApplyOption(ExperimentConfig& config, const std::string& key,
                 const std::string& value);
std::vector<std::uint64_t> ParseSeedList(const std::string& text);

// A file path is parsed as LIBSVM text; otherwise the name must be a
// bundled synthetic preset, which is generated deterministically in memory.
Dataset ResolveDataset(const std::string& name_or_path);

Problem BuildConfiguredProblem(const ExperimentConfig& config);

// One runnable cell of an experiment.
struct ResolvedCell {
  std::string name;
  Method method = Method::kEclk;
  CompressorSpec comp;
  double p = 1.0;
  double t = 1.0;
  double gamma = 0.0;
  Variant variant = Variant::kRefined;
};

// Expands config.method: "default" yields the bundled three-curve
// comparison (compressed accelerated runs with the sparsifier and the
// dithering scheme at p = r, plus the uncompressed loop at p = 1); any
// concrete method yields one cell.  "auto" fields are resolved here
// (p = r(Q)); gamma = "auto" stays 0 and is tuned by the caller.
std::vector<ResolvedCell> ResolveCells(const ExperimentConfig& config,
                                       const Problem& prob);

struct CellRun {
  ResolvedCell cell;
  std::uint64_t seed = 0;
  Trace trace;
  std::string csv_path;
};

struct ExperimentResult {
  OracleResult oracle;
  std::vector<CellRun> runs;
  std::string summary_path;
};

// Builds the problem, solves (or loads) the oracle, runs every cell for
// every seed, writes one CSV per run plus a summary table into config.out.
// Summary columns are derived from the recorded trace rows, so they agree
// with the CSVs by construction.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Writes cell, seed, parameters, status, and iterations/bits to the primary
// and secondary targets (1e-6 and 1e-4 scaled to the run's target).
void WriteSummaryCsv(const ExperimentResult& result, double target,
                     const std::string& path);

// One tuning trial.
struct TuneCell {
  double value = 0.0;  // the t (or gamma) that was tried
  Trace::Status status = Trace::Status::kOk;
  bool converged = false;
  std::int64_t iters_to_target = 0;
  std::int64_t bits_to_target = 0;
  double final_subopt = 0.0;
};

struct TuneResult {
  bool any_converged = false;
  double best = 0.0;
  std::vector<TuneCell> cells;
};

inline constexpr double kTGrid[] = {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

// Tries the fixed t grid and picks the t minimizing iterations to target
// (ties toward larger t).  Cells whose schedule resolution fails or whose
// run diverges simply do not converge.  With no convergent cell,
// any_converged is false and best is 1.
TuneResult TuneT(const Problem& prob, const OracleResult& oracle, Method method,
                 const CompressorSpec& comp, double p, Variant variant,
                 double target, std::int64_t max_iters, std::uint64_t seed);

// Same protocol over the descent-step grid {2^-j / L, j = 0..10} with L the
// method-relevant smoothness (per-sample for the stochastic baseline,
// worst shard for the deterministic one).  When nothing reaches the target,
// best is the gamma with the lowest final suboptimality.
TuneResult TuneGamma(const Problem& prob, const OracleResult& oracle, Method method,
                     const CompressorSpec& comp, double target,
                     std::int64_t max_iters, std::uint64_t seed);

struct SweepCell {
  double factor = 0.0;
  double p = 0.0;
  double t = 1.0;
  int converged_seeds = 0;
  double mean_iters = 0.0;
  double mean_bits = 0.0;  // infinity unless every seed converged
};

struct SweepResult {
  std::vector<SweepCell> cells;
  size_t best_index = 0;  // argmin of mean_bits
};

// Refresh-probability sweep over factors {3, 1, 1/3, 1/9} of r(Q); each
// factor is tuned for t first (single tuning seed), then run over the given
// seeds.
SweepResult SweepP(const Problem& prob, const OracleResult& oracle,
                   const CompressorSpec& comp, Variant variant, double target,
                   std::int64_t max_iters, const std::vector<std::uint64_t>& seeds,
                   std::uint64_t tune_seed);

}  // namespace eclk

#endif  // ECLK_EXPERIMENT_HPP_
