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

#ifndef ECLK_RNG_HPP_
#define ECLK_RNG_HPP_

#include <cstdint>
#include <random>

namespace eclk {

// Deterministic random stream. All randomness in the library flows through
// this class so that runs are reproducible bit-for-bit from (master seed,
// stream id) across platforms. The engine is std::mt19937_64, whose output
// sequence is pinned by the standard; the derived quantities (unit doubles,
// bounded ints, gaussians) are built here by hand because the standard
// distributions are not portable across library implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // Child stream with its own seed, decorrelated from other ids.
  static RngStream Derive(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t NextU64() { return eng_(); }

  // Uniform on [0, 1) with 53 significant bits.
  double NextUnit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, 1, ..., n - 1}, unbiased via rejection.
  std::int64_t NextBelow(std::int64_t n);

  bool Bernoulli(double p) { return NextUnit() < p; }

  // Standard normal via Box-Muller; one spare value is cached.
  double NextGaussian();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace eclk

#endif  // ECLK_RNG_HPP_
