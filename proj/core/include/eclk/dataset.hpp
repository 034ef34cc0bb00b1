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

#ifndef ECLK_DATASET_HPP_
#define ECLK_DATASET_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace eclk {

// Sparse binary-classification dataset in CSR form with labels in {-1, +1}.
// Feature indices are 0-based internally; the LIBSVM text form is 1-based.
struct Dataset {
  int d = 0;
  int num_samples = 0;
  std::vector<int> row_ptr;   // size num_samples + 1
  std::vector<int> col;
  std::vector<double> val;
  std::vector<double> y;      // -1 or +1

  int RowNnz(int i) const { return row_ptr[static_cast<size_t>(i) + 1] - row_ptr[static_cast<size_t>(i)]; }

  // Inner product of row i with a dense vector.
  double RowDot(int i, const double* x) const;

  // Squared l2 norm of row i.
  double RowSquaredNorm(int i) const;

  // Content fingerprint (shape, structure, values, labels); used to key
  // cached solver results.
  std::uint64_t Hash() const;
};

// Parses LIBSVM text: one sample per line, "label idx:val idx:val ...",
// indices 1-based and strictly increasing.  Labels {-1,+1} are kept; label
// sets {0,1} and {1,2} are remapped onto {-1,+1} (smaller raw label -> -1).
// Anything else, malformed tokens, or an empty stream raise ParseError with
// the offending line number.  d defaults to the largest index seen;
// d_override (if positive) fixes it instead.
Dataset ParseLibsvm(std::istream& in, int d_override = 0);
Dataset ParseLibsvmFile(const std::string& path, int d_override = 0);

// Writes the LIBSVM text form (labels as +1/-1, 1-based indices).
void WriteLibsvm(const Dataset& data, std::ostream& out);
void WriteLibsvmFile(const Dataset& data, const std::string& path);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Assignment of samples to n nodes: a seeded shuffle of [0, num_samples)
// followed by a contiguous split into n shards of m = floor(num_samples/n)
// rows each.  The num_samples - n*m surplus rows are dropped so every node
// holds the same count.
struct Partition {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> shards;  // shards[t] lists dataset rows of node t
};

// Requires 1 <= n <= num_samples.
Partition MakePartition(int num_samples, int n, std::uint64_t seed);

// Contiguous split of an explicit sample order (no shuffle); building block
// of MakePartition, exposed for tests and custom layouts.
Partition SplitBlocks(const std::vector<int>& order, int n);

}  // namespace eclk

#endif  // ECLK_DATASET_HPP_
