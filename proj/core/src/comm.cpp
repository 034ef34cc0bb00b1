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

#include "eclk/comm.hpp"

#include <algorithm>
#include <stdexcept>

namespace eclk {

void CommLedger::Charge(std::int64_t k, std::int64_t compressed_bits,
                        bool reference_broadcast) {
  if (k != static_cast<std::int64_t>(per_iter_.size()))
    throw std::invalid_argument("CommLedger::Charge: iterations must be charged in order");
  if (compressed_bits < 0)
    throw std::invalid_argument("CommLedger::Charge: negative message size");
  const std::int64_t bits = compressed_bits + 1 + (reference_broadcast ? delta1_ : 0);
  per_iter_.push_back(bits);
  cumulative_ += bits;
}

void CommLedger::ChargeMessageOnly(std::int64_t k, std::int64_t compressed_bits) {
  if (k != static_cast<std::int64_t>(per_iter_.size()))
    throw std::invalid_argument("CommLedger::Charge: iterations must be charged in order");
  if (compressed_bits < 0)
    throw std::invalid_argument("CommLedger::Charge: negative message size");
  per_iter_.push_back(compressed_bits);
  cumulative_ += compressed_bits;
}

double ExpectedCostBound(double r, double p, std::int64_t k, int d) {
  const double delta1 = 64.0 * d;
  return (delta1 * r + 1.0 + delta1) + static_cast<double>(k) * (delta1 * r + 1.0 + p * delta1);
}

double OptimalP(double r) {
  if (r <= 0.0) throw std::invalid_argument("OptimalP: r must be positive");
  return std::min(r, 1.0);
}

std::vector<double> PGrid(double r) {
  if (r <= 0.0) throw std::invalid_argument("PGrid: r must be positive");
  const double factors[] = {3.0, 1.0, 1.0 / 3.0, 1.0 / 9.0};
  std::vector<double> grid;
  for (double f : factors) grid.push_back(std::min(f * r, 1.0));
  return grid;
}

}  // namespace eclk
