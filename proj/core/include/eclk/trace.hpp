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

#ifndef ECLK_TRACE_HPP_
#define ECLK_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eclk {

// One recorded point of a run.  The row at iteration j describes the iterate
// x^j together with the communication spent to reach it (iterations 0..j-1),
// so the initial row carries zero bits.  subopt is P(x^j) minus the oracle
// value passed to the run (raw objective when none was given).  lyapunov is
// NaN unless decay tracking was enabled.  err_avg is the mean squared norm
// of the per-node compensation errors, err_agg the squared norm of their
// mean.  w_updated records whether the reference gradient feeding iteration
// j was freshly broadcast.
struct TraceRow {
  std::int64_t iter = 0;
  double subopt = 0.0;
  std::int64_t cum_bits_node = 0;
  std::int64_t cum_bits_total = 0;
  double lyapunov = 0.0;
  double err_avg = 0.0;
  double err_agg = 0.0;
  bool w_updated = false;
};

struct Trace {
  enum class Status { kOk, kDiverged, kError };

  std::vector<TraceRow> rows;
  Status status = Status::kOk;
  std::string message;
  std::int64_t iters_run = 0;
  double final_subopt = 0.0;
  std::string label;  // cell name used in summaries and plot legends

  // First recorded row with subopt <= target.
  std::optional<TraceRow> FirstCrossing(double target) const;
};

// Column schema of the CSV form, in order.
extern const char kTraceCsvHeader[];

// Writes rows with a fixed header and %.17g floats; byte-identical output
// for identical traces.
void WriteTraceCsv(const Trace& trace, std::ostream& out);
void WriteTraceCsvFile(const Trace& trace, const std::string& path);

// Reads a CSV produced by WriteTraceCsv; throws std::runtime_error on a
// malformed header or row.
Trace ReadTraceCsvFile(const std::string& path);

}  // namespace eclk

#endif  // ECLK_TRACE_HPP_
