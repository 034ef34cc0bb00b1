#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eclk::test {

double Mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("Mean of empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double StdError(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("StdError needs >= 2 samples");
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return std::sqrt(var / static_cast<double>(v.size()));
}

double Median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("Median of empty sample");
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Dataset MakeDenseDataset(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& labels) {
  if (rows.size() != labels.size())
    throw std::invalid_argument("rows/labels size mismatch");
  Dataset ds;
  ds.num_samples = static_cast<int>(rows.size());
  ds.d = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  ds.row_ptr.push_back(0);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != ds.d)
      throw std::invalid_argument("ragged rows");
    for (int j = 0; j < ds.d; ++j) {
      ds.col.push_back(j);
      ds.val.push_back(rows[i][j]);
    }
    ds.row_ptr.push_back(static_cast<std::int64_t>(ds.col.size()));
    ds.y.push_back(labels[i]);
  }
  return ds;
}

Problem MakeToyProblem(const ToySpec& spec) {
  SynthSpec synth;
  synth.num_samples = spec.nodes * spec.per_node;
  synth.groups = spec.groups;
  synth.margin_scale = 2.0;
  synth.sign_labels = true;
  synth.flip_prob = 0.05;
  synth.seed = spec.data_seed;
  Dataset ds = MakeSynthDataset(synth);
  Partition part = MakePartition(ds.num_samples, spec.nodes, spec.part_seed);
  return Problem::Build(std::move(ds), std::move(part), spec.lambda, spec.psi);
}

OracleResult SolveToyOracle(const Problem& prob, std::int64_t budget) {
  return SolveOracle(prob, budget);
}

}  // namespace eclk::test
