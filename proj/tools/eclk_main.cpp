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

// Command-line harness around the library: oracle solves, single runs, the
// refresh-probability sweep, relaxation-factor tuning, plotting, and
// synthetic data generation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eclk/experiment.hpp"
#include "eclk/svg_plot.hpp"

namespace {

using eclk::ExperimentConfig;

// Flags shared by the experiment-shaped subcommands; each registered flag
// funnels through ApplyOption so file and flag semantics stay identical.
struct CommonFlags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;

  void Register(CLI::App* app) {
    app->add_option("--config", config_file, "key=value config file");
    const char* keys[] = {"dataset", "nodes", "lambda", "method", "compressor",
                          "k", "s", "p", "t", "gamma", "seeds", "max-iters",
                          "target", "out", "variant", "cache", "psi", "psi_c",
                          "partition-seed", "oracle-budget"};
    for (const char* key : keys) {
      std::string stored(key);
      // flag spelling uses dashes, config keys use underscores
      std::string canonical(key);
      for (char& c : canonical)
        if (c == '-') c = '_';
      app->add_option_function<std::string>(
          "--" + stored,
          [this, canonical](const std::string& value) {
            overrides.emplace_back(canonical, value);
          },
          "config key " + canonical);
    }
  }

  ExperimentConfig Resolve() const {
    ExperimentConfig config;
    if (!config_file.empty()) config = eclk::LoadConfigFile(config_file);
    for (const auto& [key, value] : overrides) eclk::ApplyOption(config, key, value);
    return config;
  }
};

int CmdOracle(const ExperimentConfig& config) {
  const eclk::Problem prob = eclk::BuildConfiguredProblem(config);
  const eclk::OracleResult oracle =
      eclk::SolveOracleCached(prob, config.CacheDir(), config.oracle_budget);
  std::printf("oracle: objective %.17g residual %.3g iters %lld%s\n", oracle.p_star,
              oracle.residual, static_cast<long long>(oracle.iters),
              oracle.warned ? " (warning: residual above 1e-6)" : "");
  std::printf("cache: %s\n", config.CacheDir().c_str());
  return oracle.warned ? 1 : 0;
}

int CmdRun(const ExperimentConfig& config) {
  const eclk::ExperimentResult result = eclk::RunExperiment(config);
  std::printf("oracle objective %.17g (residual %.3g)\n", result.oracle.p_star,
              result.oracle.residual);
  for (const eclk::CellRun& run : result.runs) {
    const auto cross = run.trace.FirstCrossing(config.target);
    std::printf("%-28s status=%s final=%.3e", run.trace.label.c_str(),
                run.trace.status == eclk::Trace::Status::kOk ? "ok" : "failed",
                run.trace.final_subopt);
    if (cross)
      std::printf(" target@iter=%lld bits/node=%lld",
                  static_cast<long long>(cross->iter),
                  static_cast<long long>(cross->cum_bits_node));
    if (!run.trace.message.empty())
      std::printf(" (%s)", run.trace.message.c_str());
    std::printf("  -> %s\n", run.csv_path.c_str());
  }
  std::printf("summary: %s\n", result.summary_path.c_str());

  // convergence plots over the cells, one per axis
  std::vector<eclk::Trace> traces;
  for (const eclk::CellRun& run : result.runs) traces.push_back(run.trace);
  eclk::PlotOptions iters_opt;
  iters_opt.title = "suboptimality vs iterations";
  eclk::WriteSvgPlotFile(traces, iters_opt,
                         (std::filesystem::path(config.out) / "subopt_vs_iters.svg").string());
  eclk::PlotOptions bits_opt;
  bits_opt.title = "suboptimality vs communication";
  bits_opt.x_bits = true;
  eclk::WriteSvgPlotFile(traces, bits_opt,
                         (std::filesystem::path(config.out) / "subopt_vs_bits.svg").string());
  return 0;
}

int CmdSweepP(const ExperimentConfig& config) {
  const eclk::Problem prob = eclk::BuildConfiguredProblem(config);
  const eclk::OracleResult oracle =
      eclk::SolveOracleCached(prob, config.CacheDir(), config.oracle_budget);
  const std::vector<eclk::ResolvedCell> cells = eclk::ResolveCells(config, prob);
  const eclk::ResolvedCell& cell = cells.front();
  const eclk::SweepResult sweep =
      eclk::SweepP(prob, oracle, cell.comp, cell.variant, config.target,
                   config.max_iters, config.seeds, config.seeds.front());
  std::filesystem::create_directories(config.out);
  const std::string path =
      (std::filesystem::path(config.out) / "sweep_p.csv").string();
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  std::fprintf(f, "factor,p,t,converged_seeds,mean_iters,mean_bits\n");
  for (const eclk::SweepCell& c : sweep.cells)
    std::fprintf(f, "%.17g,%.17g,%.17g,%d,%.17g,%.17g\n", c.factor, c.p, c.t,
                 c.converged_seeds, c.mean_iters, c.mean_bits);
  std::fclose(f);
  for (size_t i = 0; i < sweep.cells.size(); ++i) {
    const eclk::SweepCell& c = sweep.cells[i];
    std::printf("factor %-5g p=%-12g t=%-8g seeds=%d mean_bits=%g%s\n", c.factor, c.p,
                c.t, c.converged_seeds, c.mean_bits,
                i == sweep.best_index ? "  <- best" : "");
  }
  std::printf("table: %s\n", path.c_str());
  return 0;
}

int CmdTuneT(const ExperimentConfig& config) {
  const eclk::Problem prob = eclk::BuildConfiguredProblem(config);
  const eclk::OracleResult oracle =
      eclk::SolveOracleCached(prob, config.CacheDir(), config.oracle_budget);
  const std::vector<eclk::ResolvedCell> cells = eclk::ResolveCells(config, prob);
  int rc = 0;
  for (const eclk::ResolvedCell& cell : cells) {
    const eclk::TuneResult tuned =
        eclk::TuneT(prob, oracle, cell.method, cell.comp, cell.p, cell.variant,
                    config.target, config.max_iters, config.seeds.front());
    std::printf("%s:\n", cell.name.c_str());
    for (const eclk::TuneCell& tc : tuned.cells) {
      if (tc.converged)
        std::printf("  t=%-8g iters=%-10lld bits/node=%lld\n", tc.value,
                    static_cast<long long>(tc.iters_to_target),
                    static_cast<long long>(tc.bits_to_target));
      else if (tc.status == eclk::Trace::Status::kError)
        std::printf("  t=%-8g schedule rejected\n", tc.value);
      else
        std::printf("  t=%-8g did not reach %g (final %.3e%s)\n", tc.value,
                    config.target, tc.final_subopt,
                    tc.status == eclk::Trace::Status::kDiverged ? ", diverged" : "");
    }
    if (tuned.any_converged)
      std::printf("  best t = %g\n", tuned.best);
    else {
      std::printf("  no t reached the target within %lld iterations\n",
                  static_cast<long long>(config.max_iters));
      rc = 1;
    }
  }
  return rc;
}

int CmdPlot(const std::vector<std::string>& csvs, const std::string& out_dir,
            const std::string& axes) {
  std::vector<eclk::Trace> traces;
  for (const std::string& path : csvs) traces.push_back(eclk::ReadTraceCsvFile(path));
  std::filesystem::create_directories(out_dir);
  eclk::PlotOptions opt;
  opt.x_bits = axes == "bits";
  opt.title = opt.x_bits ? "suboptimality vs communication" : "suboptimality vs iterations";
  const std::string path =
      (std::filesystem::path(out_dir) /
       (opt.x_bits ? "subopt_vs_bits.svg" : "subopt_vs_iters.svg"))
          .string();
  eclk::WriteSvgPlotFile(traces, opt, path);
  std::printf("plot: %s\n", path.c_str());
  return 0;
}

int CmdGenData(const std::string& preset, const std::string& out_path,
               std::uint64_t seed_override) {
  eclk::SynthSpec spec = eclk::PresetByName(preset);
  if (seed_override != 0) spec.seed = seed_override;
  const eclk::Dataset data = eclk::MakeSynthDataset(spec);
  eclk::WriteLibsvmFile(data, out_path);
  std::printf("wrote %s: %d samples, dim %d\n", out_path.c_str(), data.num_samples,
              data.d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressed distributed optimization simulator"};
  app.require_subcommand(1);

  CommonFlags oracle_flags, run_flags, sweep_flags, tune_flags;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "solve and cache the reference optimum");
  oracle_flags.Register(oracle_cmd);
  CLI::App* run_cmd = app.add_subcommand("run", "run experiment cells and write traces");
  run_flags.Register(run_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep-p", "sweep the refresh probability around r(Q)");
  sweep_flags.Register(sweep_cmd);
  CLI::App* tune_cmd = app.add_subcommand("tune-t", "search the smoothness relaxation factor");
  tune_flags.Register(tune_cmd);

  std::vector<std::string> plot_csvs;
  std::string plot_out = "out";
  std::string plot_axes = "iters";
  CLI::App* plot_cmd = app.add_subcommand("plot", "render trace CSVs as an SVG");
  plot_cmd->add_option("csv", plot_csvs, "trace CSV files")->required();
  plot_cmd->add_option("--out", plot_out, "output directory");
  plot_cmd->add_option("--axes", plot_axes, "x axis: iters or bits")
      ->check(CLI::IsMember({"iters", "bits"}));

  std::string gen_preset = "mushrooms-like";
  std::string gen_out = "data.libsvm";
  std::uint64_t gen_seed = 0;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "write a bundled synthetic dataset");
  gen_cmd->add_option("--preset", gen_preset, "mushrooms-like or a5a-like");
  gen_cmd->add_option("--out", gen_out, "output file")->required();
  gen_cmd->add_option("--seed", gen_seed, "override the preset seed (0 keeps it)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle_cmd->parsed()) return CmdOracle(oracle_flags.Resolve());
    if (run_cmd->parsed()) return CmdRun(run_flags.Resolve());
    if (sweep_cmd->parsed()) return CmdSweepP(sweep_flags.Resolve());
    if (tune_cmd->parsed()) return CmdTuneT(tune_flags.Resolve());
    if (plot_cmd->parsed()) return CmdPlot(plot_csvs, plot_out, plot_axes);
    if (gen_cmd->parsed()) return CmdGenData(gen_preset, gen_out, gen_seed);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
