#ifndef ECLK_TESTS_SUPPORT_HPP_
#define ECLK_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <vector>

#include "eclk/analysis.hpp"
#include "eclk/problem.hpp"
#include "eclk/synth.hpp"

namespace eclk::test {

double Mean(const std::vector<double>& v);
// Sample standard deviation over sqrt(count).
double StdError(const std::vector<double>& v);
double Median(std::vector<double> v);

// CSR dataset storing every entry of the given dense rows.
Dataset MakeDenseDataset(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& labels);

// Small synthetic task shared by the optimizer and analysis suites.
struct ToySpec {
  int nodes = 4;
  int per_node = 8;
  std::vector<int> groups = {3, 2, 4};
  double lambda = 1e-2;
  PsiSpec psi = PsiSpec::Zero();
  std::uint64_t data_seed = 97;
  std::uint64_t part_seed = 11;
};

Problem MakeToyProblem(const ToySpec& spec = {});

// Oracle for the toy task, solved fresh (no disk cache).
OracleResult SolveToyOracle(const Problem& prob, std::int64_t budget = 200000);

}  // namespace eclk::test

#endif  // ECLK_TESTS_SUPPORT_HPP_
