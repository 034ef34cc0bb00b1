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

#include "eclk/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace eclk {

const char kTraceCsvHeader[] =
    "iter,subopt,cum_bits_node,cum_bits_total,lyapunov,err_avg,err_agg,w_updated";

std::optional<TraceRow> Trace::FirstCrossing(double target) const {
  for (const TraceRow& row : rows)
    if (row.subopt <= target) return row;
  return std::nullopt;
}

void WriteTraceCsv(const Trace& trace, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  char buf[256];
  for (const TraceRow& r : trace.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%" PRId64 ",%.17g,%" PRId64 ",%" PRId64 ",%.17g,%.17g,%.17g,%d\n",
                  r.iter, r.subopt, r.cum_bits_node, r.cum_bits_total, r.lyapunov,
                  r.err_avg, r.err_agg, r.w_updated ? 1 : 0);
    out << buf;
  }
}

void WriteTraceCsvFile(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  WriteTraceCsv(trace, out);
}

Trace ReadTraceCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader)
    throw std::runtime_error("trace file has unexpected header: " + path);
  Trace trace;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TraceRow r;
    int wflag = 0;
    const int got = std::sscanf(line.c_str(),
                                "%" SCNd64 ",%lg,%" SCNd64 ",%" SCNd64 ",%lg,%lg,%lg,%d",
                                &r.iter, &r.subopt, &r.cum_bits_node, &r.cum_bits_total,
                                &r.lyapunov, &r.err_avg, &r.err_agg, &wflag);
    if (got != 8)
      throw std::runtime_error("malformed trace row at line " + std::to_string(line_no) +
                               " of " + path);
    r.w_updated = wflag != 0;
    trace.rows.push_back(r);
  }
  if (!trace.rows.empty()) {
    trace.iters_run = trace.rows.back().iter;
    trace.final_subopt = trace.rows.back().subopt;
  }
  trace.label = path;
  return trace;
}

}  // namespace eclk
