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

#include "eclk/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace eclk {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::Derive(std::uint64_t master_seed, std::uint64_t stream_id) {
  // Two finalizer rounds over (seed, id) give independent-looking seeds even
  // for adjacent ids.
  return RngStream(SplitMix64(SplitMix64(master_seed) ^ SplitMix64(~stream_id)));
}

std::int64_t RngStream::NextBelow(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("RngStream::NextBelow: n must be positive");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  // Largest multiple of n that fits in 64 bits; rejection keeps it unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % un + 1) % un;
  std::uint64_t r;
  do {
    r = eng_();
  } while (r > limit);
  return static_cast<std::int64_t>(r % un);
}

double RngStream::NextGaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on hand-rolled uniforms keeps the sequence portable.
  double u = NextUnit();
  double v = NextUnit();
  while (u <= 0.0) u = NextUnit();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double a = 6.283185307179586476925286766559 * v;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

}  // namespace eclk
