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

#ifndef ECLK_COMPRESSOR_HPP_
#define ECLK_COMPRESSOR_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "eclk/rng.hpp"

namespace eclk {

enum class CompressorKind { kIdentity, kTopK, kRandK, kDithering };

// Static description of a compressor: kind plus its shape parameters.
// d is the ambient dimension; k is the sparsity budget of top-k / rand-k;
// s is the number of quantization levels of the random dithering scheme.
struct CompressorSpec {
  CompressorKind kind = CompressorKind::kIdentity;
  int d = 0;
  int k = 0;
  int s = 0;

  static CompressorSpec Identity(int d);
  static CompressorSpec TopK(int d, int k);
  static CompressorSpec RandK(int d, int k);
  static CompressorSpec Dithering(int d, int s);

  // Throws std::invalid_argument on out-of-range parameters
  // (d < 1, k outside [1, d], s < 1).
  void Validate() const;
};

const char* KindName(CompressorKind kind);

// Smallest b with 2^b >= d; index width in bits for sparse payloads.
int CeilLog2(int d);

// Variance parameter of s-level random dithering: min(d/s^2, sqrt(d)/s).
double Omega(int d, int s);

// Contraction factor delta in E||Q(x) - x||^2 <= (1 - delta) ||x||^2.
// Identity: 1.  Top-k / rand-k: k/d.  Dithering: 1/(omega + 1).
double Delta(const CompressorSpec& spec);

// Bits on the wire for one compressed message under this spec.
// Identity: 64 d.  Top-k / rand-k: k (64 + ceil(log2 d)).
// Dithering: ceil(r 64 d) with r = CompressionRatio (Elias-style accounting).
std::int64_t MessageBits(const CompressorSpec& spec);

// Per-message cost as a fraction of an uncompressed 64 d-bit vector.
// For dithering this is the closed-form accounting estimate
//   r = [ (3 + (3/2) log2(2 (s^2 + d) / (s (s + sqrt(d))))) s (s + sqrt(d)) + 64 ] / (64 d),
// with the vanishing correction term dropped.  Values above 1 are reported
// as-is: a scheme that costs more than dense transmission is not clamped.
double CompressionRatio(const CompressorSpec& spec);

// --- Dense operators (used by the optimizer hot path). -----------------------

// Keeps the k entries of largest magnitude, zeroes the rest.  Magnitude ties
// are broken toward the smaller index, so the result is fully deterministic.
Eigen::VectorXd TopK(const Eigen::VectorXd& x, int k);

// Keeps a uniformly random k-subset of entries, without scaling.
// E[(d/k) RandK(x)] = x.
Eigen::VectorXd RandK(const Eigen::VectorXd& x, int k, RngStream& rng);

// Scaled random dithering: (1/(omega+1)) * Qtilde(x) with
//   Qtilde(x)_i = ||x||_2 sign(x_i) xi_i / s,
//   xi_i = floor(s |x_i| / ||x||_2 + u_i),  u_i ~ U[0,1).
// Qtilde is unbiased; the 1/(omega+1) scale makes the operator a
// delta-contraction with delta = 1/(omega+1).  Q(0) = 0.
Eigen::VectorXd ScaledDither(const Eigen::VectorXd& x, int s, RngStream& rng);

// Dispatches on spec.kind.  Identity does not consume randomness.
Eigen::VectorXd Apply(const CompressorSpec& spec, const Eigen::VectorXd& x,
                      RngStream& rng);

// --- Wire form (bit-accounting audits). --------------------------------------

// A compressed message in transportable form.  Only `bits` is contract
// bearing for cost accounting; the byte layout of Serialize is documented
// with the method.
struct CompressedMsg {
  CompressorKind kind = CompressorKind::kIdentity;
  int d = 0;
  // Sparse kinds: (indices, values) pairs.  Identity: values holds all d
  // entries.  Dithering: indices of nonzero levels, levels holds the signed
  // quantization level of each, and norm the l2 norm of the input.
  std::vector<int> indices;
  std::vector<double> values;
  std::vector<int> levels;
  double norm = 0.0;
  int s = 0;
  std::int64_t bits = 0;

  // Reconstructs the dense compressed vector Q(x).
  Eigen::VectorXd Decode() const;

  // Byte layout: 1 header byte (kind), then
  //   identity:  d doubles;
  //   top-k/rand-k:  k pairs of (index: ceil(log2 d)-bit unsigned, value:
  //     64-bit double), indices ascending, bit-packed MSB first;
  //   dithering: 64-bit norm, 16-bit count, then count pairs of
  //     (index: ceil(log2 d)-bit unsigned, level: 16-bit signed).
  std::vector<std::uint8_t> Serialize() const;
};

CompressedMsg Compress(const CompressorSpec& spec, const Eigen::VectorXd& x,
                       RngStream& rng);

CompressedMsg Deserialize(const CompressorSpec& spec,
                          const std::vector<std::uint8_t>& bytes);

// Accounting cost of one message.  Verifies that msg matches spec (kind,
// dimension, payload size) and throws std::invalid_argument on mismatch;
// the returned count is MessageBits(spec).
std::int64_t BitCost(const CompressorSpec& spec, const CompressedMsg& msg);

}  // namespace eclk

#endif  // ECLK_COMPRESSOR_HPP_
