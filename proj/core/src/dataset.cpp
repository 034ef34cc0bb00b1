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

#include "eclk/dataset.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eclk/rng.hpp"

namespace eclk {

namespace {

[[noreturn]] void Fail(std::int64_t line_no, const std::string& what) {
  throw ParseError("libsvm parse error at line " + std::to_string(line_no) + ": " + what);
}

bool BlankLine(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

void HashBytes(std::uint64_t& h, const void* p, size_t len) {
  const auto* b = static_cast<const unsigned char*>(p);
  for (size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ULL;  // FNV-1a
  }
}

}  // namespace

double Dataset::RowDot(int i, const double* x) const {
  double acc = 0.0;
  for (int p = row_ptr[static_cast<size_t>(i)]; p < row_ptr[static_cast<size_t>(i) + 1]; ++p)
    acc += val[static_cast<size_t>(p)] * x[col[static_cast<size_t>(p)]];
  return acc;
}

double Dataset::RowSquaredNorm(int i) const {
  double acc = 0.0;
  for (int p = row_ptr[static_cast<size_t>(i)]; p < row_ptr[static_cast<size_t>(i) + 1]; ++p)
    acc += val[static_cast<size_t>(p)] * val[static_cast<size_t>(p)];
  return acc;
}

std::uint64_t Dataset::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  HashBytes(h, &d, sizeof(d));
  HashBytes(h, &num_samples, sizeof(num_samples));
  HashBytes(h, row_ptr.data(), row_ptr.size() * sizeof(int));
  HashBytes(h, col.data(), col.size() * sizeof(int));
  HashBytes(h, val.data(), val.size() * sizeof(double));
  HashBytes(h, y.data(), y.size() * sizeof(double));
  return h;
}

Dataset ParseLibsvm(std::istream& in, int d_override) {
  Dataset data;
  data.row_ptr.push_back(0);
  std::vector<double> raw_labels;
  std::string line;
  std::int64_t line_no = 0;
  int max_idx = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (BlankLine(line)) continue;
    const char* p = line.c_str();
    char* end = nullptr;
    const double label = std::strtod(p, &end);
    if (end == p) Fail(line_no, "expected numeric label");
    p = end;
    int prev_idx = 0;
    while (true) {
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
      if (*p == '\0') break;
      const long idx = std::strtol(p, &end, 10);
      if (end == p || *end != ':') Fail(line_no, "expected idx:val pair");
      if (idx < 1) Fail(line_no, "feature index must be >= 1");
      if (idx <= prev_idx) Fail(line_no, "feature indices must be strictly increasing");
      p = end + 1;
      const double v = std::strtod(p, &end);
      if (end == p) Fail(line_no, "expected numeric feature value");
      p = end;
      data.col.push_back(static_cast<int>(idx) - 1);
      data.val.push_back(v);
      prev_idx = static_cast<int>(idx);
    }
    if (prev_idx > max_idx) max_idx = prev_idx;
    raw_labels.push_back(label);
    data.row_ptr.push_back(static_cast<int>(data.col.size()));
  }
  if (raw_labels.empty()) throw ParseError("libsvm parse error: empty input");

  bool pm1 = true, zo = true, ot = true;
  for (double l : raw_labels) {
    pm1 = pm1 && (l == -1.0 || l == 1.0);
    zo = zo && (l == 0.0 || l == 1.0);
    ot = ot && (l == 1.0 || l == 2.0);
  }
  data.y.reserve(raw_labels.size());
  if (pm1) {
    data.y = raw_labels;
  } else if (zo) {
    for (double l : raw_labels) data.y.push_back(l == 0.0 ? -1.0 : 1.0);
  } else if (ot) {
    for (double l : raw_labels) data.y.push_back(l == 1.0 ? -1.0 : 1.0);
  } else {
    throw ParseError(
        "libsvm parse error: label set must be one of {-1,+1}, {0,1}, {1,2}");
  }

  data.num_samples = static_cast<int>(raw_labels.size());
  data.d = d_override > 0 ? d_override : max_idx;
  if (d_override > 0 && max_idx > d_override)
    throw ParseError("libsvm parse error: feature index exceeds forced dimension");
  return data;
}

Dataset ParseLibsvmFile(const std::string& path, int d_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);
  return ParseLibsvm(in, d_override);
}

void WriteLibsvm(const Dataset& data, std::ostream& out) {
  for (int i = 0; i < data.num_samples; ++i) {
    out << (data.y[static_cast<size_t>(i)] > 0 ? "+1" : "-1");
    for (int p = data.row_ptr[static_cast<size_t>(i)]; p < data.row_ptr[static_cast<size_t>(i) + 1]; ++p) {
      out << ' ' << data.col[static_cast<size_t>(p)] + 1 << ':' << data.val[static_cast<size_t>(p)];
    }
    out << '\n';
  }
}

void WriteLibsvmFile(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  WriteLibsvm(data, out);
}

Partition SplitBlocks(const std::vector<int>& order, int n) {
  if (n < 1) throw std::invalid_argument("SplitBlocks: n must be >= 1");
  const int m = static_cast<int>(order.size()) / n;
  if (m < 1) throw std::invalid_argument("SplitBlocks: need at least one sample per node");
  Partition part;
  part.n = n;
  part.m = m;
  part.shards.resize(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    part.shards[static_cast<size_t>(t)].assign(order.begin() + static_cast<std::ptrdiff_t>(t) * m,
                                               order.begin() + static_cast<std::ptrdiff_t>(t + 1) * m);
  }
  return part;
}

Partition MakePartition(int num_samples, int n, std::uint64_t seed) {
  if (n < 1 || n > num_samples)
    throw std::invalid_argument("MakePartition: need 1 <= n <= num_samples");
  std::vector<int> order(static_cast<size_t>(num_samples));
  std::iota(order.begin(), order.end(), 0);
  RngStream rng = RngStream::Derive(seed, 0x9a27);
  for (int i = num_samples - 1; i > 0; --i) {
    const auto j = static_cast<size_t>(rng.NextBelow(i + 1));
    std::swap(order[static_cast<size_t>(i)], order[j]);
  }
  Partition part = SplitBlocks(order, n);
  part.seed = seed;
  return part;
}

}  // namespace eclk
