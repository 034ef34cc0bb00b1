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

#ifndef ECLK_SVG_PLOT_HPP_
#define ECLK_SVG_PLOT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "eclk/trace.hpp"

namespace eclk {

// Convergence plot: suboptimality (log scale) against either iterations or
// cumulative per-node bits.
struct PlotOptions {
  std::string title = "suboptimality";
  bool x_bits = false;        // false: iterations, true: per-node bits
  double y_floor = 1e-12;     // values at or below are clamped to the floor
};

// One polyline per trace, labelled from trace.label.  Traces without rows
// are skipped with a warning on stderr; an empty collection still yields a
// valid (axes-only) document.
void WriteSvgPlot(const std::vector<Trace>& traces, const PlotOptions& opt,
                  std::ostream& out);
void WriteSvgPlotFile(const std::vector<Trace>& traces, const PlotOptions& opt,
                      const std::string& path);

}  // namespace eclk

#endif  // ECLK_SVG_PLOT_HPP_
