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

#include "eclk/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eclk {

namespace {

std::string Trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double ParseDouble(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
  }
}

std::int64_t ParseInt(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": " + value);
  }
}

Variant ParseVariant(const std::string& name) {
  if (name == "general") return Variant::kGeneral;
  if (name == "refined") return Variant::kRefined;
  throw std::invalid_argument("config: unknown variant: " + name);
}

PsiSpec ParsePsi(const std::string& kind, double c) {
  if (kind == "zero") return PsiSpec::Zero();
  if (kind == "l1") return PsiSpec::L1(c);
  if (kind == "l2") return PsiSpec::L2(c);
  throw std::invalid_argument("config: unknown psi kind: " + kind);
}

CompressorSpec ParseCompressor(const std::string& kind, int d, int k, int s) {
  if (kind == "identity") return CompressorSpec::Identity(d);
  if (kind == "topk") return CompressorSpec::TopK(d, k);
  if (kind == "randk") return CompressorSpec::RandK(d, k);
  if (kind == "dithering") return CompressorSpec::Dithering(d, s);
  throw std::invalid_argument("config: unknown compressor: " + kind);
}

std::string FormatG(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Compact parameter tag for filenames ("0.01", "1e-05").
std::string Tag(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  std::string s(buf);
  for (char& c : s)
    if (c == '+' || c == '.') c = c == '+' ? 'p' : '_';
  return s;
}

Trace RunCell(const Problem& prob, const OracleResult& oracle,
              const ResolvedCell& cell, const HyperParams* hp, double target,
              std::int64_t max_iters, std::uint64_t seed, std::int64_t dense_until,
              std::int64_t stride) {
  RunOptions opt;
  opt.method = cell.method;
  opt.comp = cell.comp;
  if (hp) opt.hp = *hp;
  opt.gamma = cell.gamma;
  opt.max_iters = max_iters;
  opt.target = target;
  opt.seed = seed;
  opt.p_star = oracle.p_star;
  opt.dense_until = dense_until;
  opt.stride = stride;
  return Run(prob, opt);
}

bool Accelerated(Method m) {
  return m == Method::kEclk || m == Method::kEclkFull || m == Method::kLKatyusha;
}

}  // namespace

std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    seeds.push_back(static_cast<std::uint64_t>(ParseInt("seeds", item)));
  }
  if (seeds.empty()) throw std::invalid_argument("config: empty seed list");
  return seeds;
}

void ApplyOption(ExperimentConfig& config, const std::string& key,
                 const std::string& value) {
  if (key == "dataset") config.dataset = value;
  else if (key == "nodes") config.nodes = static_cast<int>(ParseInt(key, value));
  else if (key == "lambda") config.lambda = ParseDouble(key, value);
  else if (key == "psi") config.psi = value;
  else if (key == "psi_c") config.psi_c = ParseDouble(key, value);
  else if (key == "partition_seed") config.partition_seed = static_cast<std::uint64_t>(ParseInt(key, value));
  else if (key == "seeds") config.seeds = ParseSeedList(value);
  else if (key == "max_iters") config.max_iters = ParseInt(key, value);
  else if (key == "oracle_budget") config.oracle_budget = ParseInt(key, value);
  else if (key == "target") config.target = ParseDouble(key, value);
  else if (key == "method") config.method = value;
  else if (key == "compressor") config.compressor = value;
  else if (key == "k") config.k = static_cast<int>(ParseInt(key, value));
  else if (key == "s") config.s = static_cast<int>(ParseInt(key, value));
  else if (key == "p") config.p = value;
  else if (key == "t") config.t = ParseDouble(key, value);
  else if (key == "gamma") config.gamma = value;
  else if (key == "variant") config.variant = value;
  else if (key == "out") config.out = value;
  else if (key == "cache") config.cache = value;
  else if (key == "dense_until") config.dense_until = ParseInt(key, value);
  else if (key == "stride") config.stride = ParseInt(key, value);
  else throw std::invalid_argument("config: unknown key: " + key);
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value at line " + std::to_string(line_no));
    ApplyOption(config, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return config;
}

Dataset ResolveDataset(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return ParseLibsvmFile(name_or_path);
  return MakeSynthDataset(PresetByName(name_or_path));
}

Problem BuildConfiguredProblem(const ExperimentConfig& config) {
  Dataset data = ResolveDataset(config.dataset);
  Partition part = MakePartition(data.num_samples, config.nodes, config.partition_seed);
  return Problem::Build(std::move(data), std::move(part), config.lambda,
                        ParsePsi(config.psi, config.psi_c));
}

std::vector<ResolvedCell> ResolveCells(const ExperimentConfig& config,
                                       const Problem& prob) {
  const int d = prob.Dim();
  const Variant variant = ParseVariant(config.variant);
  std::vector<ResolvedCell> cells;
  if (config.method == "default") {
    ResolvedCell top1{"eclk-top1", Method::kEclk, CompressorSpec::TopK(d, 1), 0.0,
                      config.t, 0.0, variant};
    top1.p = OptimalP(CompressionRatio(top1.comp));
    ResolvedCell dither{"eclk-dither-s2", Method::kEclk, CompressorSpec::Dithering(d, 2),
                        0.0, config.t, 0.0, variant};
    dither.p = OptimalP(CompressionRatio(dither.comp));
    ResolvedCell plain{"lkatyusha", Method::kLKatyusha, CompressorSpec::Identity(d), 1.0,
                       config.t, 0.0, variant};
    cells = {top1, dither, plain};
    return cells;
  }
  ResolvedCell cell;
  cell.method = ParseMethod(config.method);
  cell.comp = cell.method == Method::kLKatyusha
                  ? CompressorSpec::Identity(d)
                  : ParseCompressor(config.compressor, d, config.k, config.s);
  cell.variant = variant;
  cell.t = config.t;
  if (config.p == "auto") {
    cell.p = cell.method == Method::kLKatyusha ? 1.0
                                               : OptimalP(CompressionRatio(cell.comp));
  } else {
    cell.p = ParseDouble("p", config.p);
  }
  if (config.gamma != "auto" && !Accelerated(cell.method))
    cell.gamma = ParseDouble("gamma", config.gamma);
  std::string name = config.method;
  if (cell.method != Method::kLKatyusha) {
    name += "-" + std::string(KindName(cell.comp.kind));
    if (cell.comp.kind == CompressorKind::kTopK || cell.comp.kind == CompressorKind::kRandK)
      name += std::to_string(cell.comp.k);
    if (cell.comp.kind == CompressorKind::kDithering)
      name += "-s" + std::to_string(cell.comp.s);
  }
  if (cell.t != 1.0) name += "-t" + Tag(cell.t);
  cell.name = name;
  return {cell};
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.out);
  const Problem prob = BuildConfiguredProblem(config);
  ExperimentResult result;
  result.oracle = SolveOracleCached(prob, config.CacheDir(), config.oracle_budget);
  const std::vector<ResolvedCell> cells = ResolveCells(config, prob);

  for (const ResolvedCell& cell_in : cells) {
    ResolvedCell cell = cell_in;
    HyperParams hp;
    bool hp_ok = true;
    std::string hp_err;
    if (Accelerated(cell.method)) {
      try {
        hp = Configure(prob.Constants(), Delta(cell.comp), cell.p, prob.Nodes(),
                       cell.variant, cell.t);
      } catch (const std::exception& ex) {
        hp_ok = false;
        hp_err = ex.what();
      }
    } else if (config.gamma == "auto") {
      cell.gamma = TuneGamma(prob, result.oracle, cell.method, cell.comp,
                             config.target, config.max_iters, config.seeds.front())
                       .best;
    }
    for (std::uint64_t seed : config.seeds) {
      CellRun run;
      run.cell = cell;
      run.seed = seed;
      if (Accelerated(cell.method) && !hp_ok) {
        run.trace.status = Trace::Status::kError;
        run.trace.message = hp_err;
      } else {
        run.trace = RunCell(prob, result.oracle, cell, hp_ok ? &hp : nullptr,
                            config.target, config.max_iters, seed,
                            config.dense_until, config.stride);
      }
      run.trace.label = cell.name + "-seed" + std::to_string(seed);
      run.csv_path = (std::filesystem::path(config.out) / (run.trace.label + ".csv")).string();
      WriteTraceCsvFile(run.trace, run.csv_path);
      result.runs.push_back(std::move(run));
    }
  }
  result.summary_path = (std::filesystem::path(config.out) / "summary.csv").string();
  WriteSummaryCsv(result, config.target, result.summary_path);
  return result;
}

void WriteSummaryCsv(const ExperimentResult& result, double target,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary file: " + path);
  out << "cell,seed,method,compressor,p,t,gamma,status,iters_run,final_subopt,"
         "iters_to_1e-4,bits_to_1e-4,iters_to_1e-6,bits_to_1e-6\n";
  (void)target;
  for (const CellRun& run : result.runs) {
    const char* status = run.trace.status == Trace::Status::kOk
                             ? "ok"
                             : run.trace.status == Trace::Status::kDiverged ? "diverged"
                                                                           : "error";
    out << run.cell.name << ',' << run.seed << ',' << MethodName(run.cell.method) << ','
        << KindName(run.cell.comp.kind) << ',' << FormatG(run.cell.p) << ','
        << FormatG(run.cell.t) << ',' << FormatG(run.cell.gamma) << ',' << status << ','
        << run.trace.iters_run << ',' << FormatG(run.trace.final_subopt);
    for (double tgt : {1e-4, 1e-6}) {
      const auto cross = run.trace.FirstCrossing(tgt);
      if (cross) {
        out << ',' << cross->iter << ',' << cross->cum_bits_node;
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
}

TuneResult TuneT(const Problem& prob, const OracleResult& oracle, Method method,
                 const CompressorSpec& comp, double p, Variant variant,
                 double target, std::int64_t max_iters, std::uint64_t seed) {
  TuneResult result;
  result.best = 1.0;
  std::int64_t best_iters = std::numeric_limits<std::int64_t>::max();
  for (double t : kTGrid) {
    TuneCell cell;
    cell.value = t;
    HyperParams hp;
    bool ok = true;
    try {
      hp = Configure(prob.Constants(), Delta(comp), p, prob.Nodes(), variant, t);
    } catch (const std::exception&) {
      ok = false;
      cell.status = Trace::Status::kError;
    }
    if (ok) {
      ResolvedCell rc{"tune", method, comp, p, t, 0.0, variant};
      const Trace trace = RunCell(prob, oracle, rc, &hp, target, max_iters, seed,
                                  1000, 10);
      cell.status = trace.status;
      cell.final_subopt = trace.final_subopt;
      const auto cross = trace.FirstCrossing(target);
      if (trace.status == Trace::Status::kOk && cross) {
        cell.converged = true;
        cell.iters_to_target = cross->iter;
        cell.bits_to_target = cross->cum_bits_node;
        // strict < keeps the earlier (larger) t on ties
        if (cell.iters_to_target < best_iters) {
          best_iters = cell.iters_to_target;
          result.best = t;
          result.any_converged = true;
        }
      }
    }
    result.cells.push_back(cell);
  }
  return result;
}

TuneResult TuneGamma(const Problem& prob, const OracleResult& oracle, Method method,
                     const CompressorSpec& comp, double target,
                     std::int64_t max_iters, std::uint64_t seed) {
  const double l = method == Method::kEcgd ? prob.Constants().l_shard
                                           : prob.Constants().l_max;
  TuneResult result;
  std::int64_t best_iters = std::numeric_limits<std::int64_t>::max();
  double best_plateau = std::numeric_limits<double>::infinity();
  double plateau_gamma = 0.0;
  for (int j = 0; j <= 10; ++j) {
    const double gamma = std::ldexp(1.0, -j) / l;
    TuneCell cell;
    cell.value = gamma;
    ResolvedCell rc{"tune", method, comp, 0.0, 1.0, gamma, Variant::kRefined};
    const Trace trace = RunCell(prob, oracle, rc, nullptr, target, max_iters, seed,
                                1000, 10);
    cell.status = trace.status;
    cell.final_subopt = trace.final_subopt;
    const auto cross = trace.FirstCrossing(target);
    if (trace.status == Trace::Status::kOk && cross) {
      cell.converged = true;
      cell.iters_to_target = cross->iter;
      cell.bits_to_target = cross->cum_bits_node;
      if (cell.iters_to_target < best_iters) {
        best_iters = cell.iters_to_target;
        result.best = gamma;
        result.any_converged = true;
      }
    } else if (trace.status == Trace::Status::kOk && cell.final_subopt < best_plateau) {
      best_plateau = cell.final_subopt;
      plateau_gamma = gamma;
    }
    result.cells.push_back(cell);
  }
  if (!result.any_converged) result.best = plateau_gamma > 0.0 ? plateau_gamma : 1.0 / l;
  return result;
}

SweepResult SweepP(const Problem& prob, const OracleResult& oracle,
                   const CompressorSpec& comp, Variant variant, double target,
                   std::int64_t max_iters, const std::vector<std::uint64_t>& seeds,
                   std::uint64_t tune_seed) {
  const double r = CompressionRatio(comp);
  const double factors[] = {3.0, 1.0, 1.0 / 3.0, 1.0 / 9.0};
  SweepResult result;
  double best_bits = std::numeric_limits<double>::infinity();
  for (double f : factors) {
    SweepCell cell;
    cell.factor = f;
    cell.p = std::min(f * r, 1.0);
    const TuneResult tuned = TuneT(prob, oracle, Method::kEclk, comp, cell.p, variant,
                                   target, max_iters, tune_seed);
    cell.t = tuned.best;
    if (tuned.any_converged) {
      HyperParams hp = Configure(prob.Constants(), Delta(comp), cell.p, prob.Nodes(),
                                 variant, cell.t);
      double sum_bits = 0.0;
      double sum_iters = 0.0;
      for (std::uint64_t seed : seeds) {
        ResolvedCell rc{"sweep", Method::kEclk, comp, cell.p, cell.t, 0.0, variant};
        const Trace trace = RunCell(prob, oracle, rc, &hp, target, max_iters, seed,
                                    1000, 10);
        const auto cross = trace.FirstCrossing(target);
        if (trace.status == Trace::Status::kOk && cross) {
          ++cell.converged_seeds;
          sum_bits += static_cast<double>(cross->cum_bits_node);
          sum_iters += static_cast<double>(cross->iter);
        }
      }
      if (cell.converged_seeds == static_cast<int>(seeds.size())) {
        cell.mean_bits = sum_bits / static_cast<double>(seeds.size());
        cell.mean_iters = sum_iters / static_cast<double>(seeds.size());
      } else {
        cell.mean_bits = std::numeric_limits<double>::infinity();
        cell.mean_iters = std::numeric_limits<double>::infinity();
      }
    } else {
      cell.mean_bits = std::numeric_limits<double>::infinity();
      cell.mean_iters = std::numeric_limits<double>::infinity();
    }
    if (cell.mean_bits < best_bits) {
      best_bits = cell.mean_bits;
      result.best_index = result.cells.size();
    }
    result.cells.push_back(cell);
  }
  return result;
}

}  // namespace eclk
