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

#ifndef ECLK_COMM_HPP_
#define ECLK_COMM_HPP_

#include <cstdint>
#include <vector>

namespace eclk {

// Per-node uplink accounting.  One iteration charges
//   compressed message bits + 1 (refresh coin) + 64 d if this iteration
//   broadcasts a fresh reference gradient (iteration 0 always does).
// All nodes send symmetric payloads, so one ledger describes each node;
// aggregate traffic is n times the ledger.
class CommLedger {
 public:
  explicit CommLedger(int d) : delta1_(64LL * d) {}

  // Appends the charge of iteration k; iterations must be charged in order
  // starting at 0 (checked).  reference_broadcast is the refresh flag of
  // the iteration being charged.
  void Charge(std::int64_t k, std::int64_t compressed_bits, bool reference_broadcast);

  // Message bits alone; for baselines without the coin/reference protocol.
  void ChargeMessageOnly(std::int64_t k, std::int64_t compressed_bits);

  std::int64_t Delta1() const { return delta1_; }
  std::int64_t Cumulative() const { return cumulative_; }
  std::int64_t Iterations() const { return static_cast<std::int64_t>(per_iter_.size()); }
  const std::vector<std::int64_t>& PerIter() const { return per_iter_; }

 private:
  std::int64_t delta1_;
  std::int64_t cumulative_ = 0;
  std::vector<std::int64_t> per_iter_;
};

// Expected per-node uplink through iteration k (inclusive) when each
// message costs r * 64 d bits and the reference refreshes with probability
// p after the mandatory initial broadcast:
//   (Delta1 r + 1 + Delta1) + k (Delta1 r + 1 + p Delta1),  Delta1 = 64 d.
double ExpectedCostBound(double r, double p, std::int64_t k, int d);

// Refresh probability minimizing the expected-cost/rate trade-off: p = r.
double OptimalP(double r);

// Sweep grid around the optimum: {3, 1, 1/3, 1/9} * r, clamped into (0, 1].
std::vector<double> PGrid(double r);

}  // namespace eclk

#endif  // ECLK_COMM_HPP_
