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

#include "eclk/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eclk {

namespace {

// Magnitude order with ties toward the smaller index; total, hence
// deterministic.
bool MagGreater(const Eigen::VectorXd& x, int i, int j) {
  const double ai = std::abs(x[i]);
  const double aj = std::abs(x[j]);
  if (ai != aj) return ai > aj;
  return i < j;
}

std::vector<int> TopKIndices(const Eigen::VectorXd& x, int k) {
  std::vector<int> idx(static_cast<size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&x](int i, int j) { return MagGreater(x, i, j); });
  idx.resize(static_cast<size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> RandKIndices(int d, int k, RngStream& rng) {
  // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
  std::vector<int> pool(static_cast<size_t>(d));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.NextBelow(d - i));
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
  }
  pool.resize(static_cast<size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Signed quantization levels of random dithering; consumes one uniform per
// coordinate.  Empty result for the zero vector (no randomness consumed).
std::vector<int> DitherLevels(const Eigen::VectorXd& x, int s, RngStream& rng) {
  std::vector<int> levels(static_cast<size_t>(x.size()), 0);
  const double norm = x.norm();
  if (norm == 0.0) return levels;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double u = rng.NextUnit();
    const int xi = static_cast<int>(std::floor(s * std::abs(x[i]) / norm + u));
    levels[static_cast<size_t>(i)] = x[i] < 0.0 ? -xi : xi;
  }
  return levels;
}

void CheckMsg(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("BitCost: message does not match spec: ") + what);
}

// MSB-first bit packer for the wire form.
class BitWriter {
 public:
  void Put(std::uint64_t value, int nbits) {
    for (int b = nbits - 1; b >= 0; --b) PushBit((value >> b) & 1u);
  }
  std::vector<std::uint8_t> Take() {
    if (fill_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(cur_ << (8 - fill_)));
      cur_ = 0;
      fill_ = 0;
    }
    return std::move(out_);
  }

 private:
  void PushBit(std::uint64_t bit) {
    cur_ = static_cast<std::uint8_t>((cur_ << 1) | bit);
    if (++fill_ == 8) {
      out_.push_back(cur_);
      cur_ = 0;
      fill_ = 0;
    }
  }
  std::vector<std::uint8_t> out_;
  std::uint8_t cur_ = 0;
  int fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint64_t Get(int nbits) {
    std::uint64_t v = 0;
    for (int b = 0; b < nbits; ++b) {
      const size_t byte = pos_ >> 3;
      if (byte >= bytes_.size()) throw std::invalid_argument("Deserialize: truncated message");
      const int off = 7 - static_cast<int>(pos_ & 7);
      v = (v << 1) | ((bytes_[byte] >> off) & 1u);
      ++pos_;
    }
    return v;
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  size_t pos_ = 0;
};

std::uint64_t DoubleBits(double x) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(x));
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

double BitsDouble(std::uint64_t u) {
  double x;
  std::memcpy(&x, &u, sizeof(x));
  return x;
}

}  // namespace

CompressorSpec CompressorSpec::Identity(int d) { return {CompressorKind::kIdentity, d, 0, 0}; }
CompressorSpec CompressorSpec::TopK(int d, int k) { return {CompressorKind::kTopK, d, k, 0}; }
CompressorSpec CompressorSpec::RandK(int d, int k) { return {CompressorKind::kRandK, d, k, 0}; }
CompressorSpec CompressorSpec::Dithering(int d, int s) { return {CompressorKind::kDithering, d, 0, s}; }

void CompressorSpec::Validate() const {
  if (d < 1) throw std::invalid_argument("CompressorSpec: d must be >= 1");
  switch (kind) {
    case CompressorKind::kIdentity:
      break;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      if (k < 1 || k > d) throw std::invalid_argument("CompressorSpec: k must lie in [1, d]");
      break;
    case CompressorKind::kDithering:
      if (s < 1) throw std::invalid_argument("CompressorSpec: s must be >= 1");
      break;
  }
}

const char* KindName(CompressorKind kind) {
  switch (kind) {
    case CompressorKind::kIdentity: return "identity";
    case CompressorKind::kTopK: return "topk";
    case CompressorKind::kRandK: return "randk";
    case CompressorKind::kDithering: return "dithering";
  }
  return "?";
}

int CeilLog2(int d) {
  int b = 0;
  while ((1LL << b) < d) ++b;
  return b;
}

double Omega(int d, int s) {
  const double dd = static_cast<double>(d);
  const double ss = static_cast<double>(s);
  return std::min(dd / (ss * ss), std::sqrt(dd) / ss);
}

double Delta(const CompressorSpec& spec) {
  spec.Validate();
  switch (spec.kind) {
    case CompressorKind::kIdentity: return 1.0;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      return static_cast<double>(spec.k) / static_cast<double>(spec.d);
    case CompressorKind::kDithering:
      return 1.0 / (Omega(spec.d, spec.s) + 1.0);
  }
  return 0.0;
}

double CompressionRatio(const CompressorSpec& spec) {
  spec.Validate();
  const double dd = static_cast<double>(spec.d);
  switch (spec.kind) {
    case CompressorKind::kIdentity:
      return 1.0;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      return static_cast<double>(spec.k) * (64.0 + CeilLog2(spec.d)) / (64.0 * dd);
    case CompressorKind::kDithering: {
      const double ss = static_cast<double>(spec.s);
      const double block = ss * (ss + std::sqrt(dd));
      const double inner = 2.0 * (ss * ss + dd) / block;
      return ((3.0 + 1.5 * std::log2(inner)) * block + 64.0) / (64.0 * dd);
    }
  }
  return 0.0;
}

std::int64_t MessageBits(const CompressorSpec& spec) {
  spec.Validate();
  switch (spec.kind) {
    case CompressorKind::kIdentity:
      return 64LL * spec.d;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      return static_cast<std::int64_t>(spec.k) * (64 + CeilLog2(spec.d));
    case CompressorKind::kDithering:
      return static_cast<std::int64_t>(std::ceil(CompressionRatio(spec) * 64.0 * spec.d));
  }
  return 0;
}

Eigen::VectorXd TopK(const Eigen::VectorXd& x, int k) {
  if (k < 1 || k > x.size()) throw std::invalid_argument("TopK: k must lie in [1, d]");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int i : TopKIndices(x, k)) out[i] = x[i];
  return out;
}

Eigen::VectorXd RandK(const Eigen::VectorXd& x, int k, RngStream& rng) {
  if (k < 1 || k > x.size()) throw std::invalid_argument("RandK: k must lie in [1, d]");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (int i : RandKIndices(static_cast<int>(x.size()), k, rng)) out[i] = x[i];
  return out;
}

Eigen::VectorXd ScaledDither(const Eigen::VectorXd& x, int s, RngStream& rng) {
  if (s < 1) throw std::invalid_argument("ScaledDither: s must be >= 1");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  const double norm = x.norm();
  if (norm == 0.0) return out;
  const std::vector<int> levels = DitherLevels(x, s, rng);
  const double scale = norm / (s * (Omega(static_cast<int>(x.size()), s) + 1.0));
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = scale * levels[static_cast<size_t>(i)];
  return out;
}

Eigen::VectorXd Apply(const CompressorSpec& spec, const Eigen::VectorXd& x,
                      RngStream& rng) {
  spec.Validate();
  if (x.size() != spec.d) throw std::invalid_argument("Apply: dimension mismatch");
  switch (spec.kind) {
    case CompressorKind::kIdentity: return x;
    case CompressorKind::kTopK: return TopK(x, spec.k);
    case CompressorKind::kRandK: return RandK(x, spec.k, rng);
    case CompressorKind::kDithering: return ScaledDither(x, spec.s, rng);
  }
  return x;
}

Eigen::VectorXd CompressedMsg::Decode() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  switch (kind) {
    case CompressorKind::kIdentity:
      for (int i = 0; i < d; ++i) out[i] = values[static_cast<size_t>(i)];
      break;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      for (size_t j = 0; j < indices.size(); ++j) out[indices[j]] = values[j];
      break;
    case CompressorKind::kDithering: {
      const double scale = norm / (s * (Omega(d, s) + 1.0));
      for (size_t j = 0; j < indices.size(); ++j) out[indices[j]] = scale * levels[j];
      break;
    }
  }
  return out;
}

CompressedMsg Compress(const CompressorSpec& spec, const Eigen::VectorXd& x,
                       RngStream& rng) {
  spec.Validate();
  if (x.size() != spec.d) throw std::invalid_argument("Compress: dimension mismatch");
  CompressedMsg msg;
  msg.kind = spec.kind;
  msg.d = spec.d;
  msg.s = spec.s;
  msg.bits = MessageBits(spec);
  switch (spec.kind) {
    case CompressorKind::kIdentity:
      msg.values.assign(x.data(), x.data() + x.size());
      break;
    case CompressorKind::kTopK:
      msg.indices = TopKIndices(x, spec.k);
      for (int i : msg.indices) msg.values.push_back(x[i]);
      break;
    case CompressorKind::kRandK:
      msg.indices = RandKIndices(spec.d, spec.k, rng);
      for (int i : msg.indices) msg.values.push_back(x[i]);
      break;
    case CompressorKind::kDithering: {
      msg.norm = x.norm();
      if (msg.norm > 0.0) {
        const std::vector<int> levels = DitherLevels(x, spec.s, rng);
        for (int i = 0; i < spec.d; ++i) {
          if (levels[static_cast<size_t>(i)] != 0) {
            msg.indices.push_back(i);
            msg.levels.push_back(levels[static_cast<size_t>(i)]);
          }
        }
      }
      break;
    }
  }
  return msg;
}

std::vector<std::uint8_t> CompressedMsg::Serialize() const {
  BitWriter w;
  w.Put(static_cast<std::uint64_t>(kind), 8);
  const int ib = CeilLog2(d);
  switch (kind) {
    case CompressorKind::kIdentity:
      for (double v : values) w.Put(DoubleBits(v), 64);
      break;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      for (size_t j = 0; j < indices.size(); ++j) {
        w.Put(static_cast<std::uint64_t>(indices[j]), ib);
        w.Put(DoubleBits(values[j]), 64);
      }
      break;
    case CompressorKind::kDithering:
      w.Put(DoubleBits(norm), 64);
      w.Put(indices.size(), 16);
      for (size_t j = 0; j < indices.size(); ++j) {
        if (levels[j] < -32768 || levels[j] > 32767)
          throw std::invalid_argument("Serialize: dithering level out of range");
        w.Put(static_cast<std::uint64_t>(indices[j]), ib);
        w.Put(static_cast<std::uint64_t>(static_cast<std::uint16_t>(levels[j])), 16);
      }
      break;
  }
  return w.Take();
}

CompressedMsg Deserialize(const CompressorSpec& spec,
                          const std::vector<std::uint8_t>& bytes) {
  spec.Validate();
  BitReader r(bytes);
  const auto kind = static_cast<CompressorKind>(r.Get(8));
  if (kind != spec.kind) throw std::invalid_argument("Deserialize: kind mismatch");
  CompressedMsg msg;
  msg.kind = spec.kind;
  msg.d = spec.d;
  msg.s = spec.s;
  msg.bits = MessageBits(spec);
  const int ib = CeilLog2(spec.d);
  switch (spec.kind) {
    case CompressorKind::kIdentity:
      for (int i = 0; i < spec.d; ++i) msg.values.push_back(BitsDouble(r.Get(64)));
      break;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      for (int j = 0; j < spec.k; ++j) {
        msg.indices.push_back(static_cast<int>(r.Get(ib)));
        msg.values.push_back(BitsDouble(r.Get(64)));
      }
      break;
    case CompressorKind::kDithering: {
      msg.norm = BitsDouble(r.Get(64));
      const int count = static_cast<int>(r.Get(16));
      for (int j = 0; j < count; ++j) {
        msg.indices.push_back(static_cast<int>(r.Get(ib)));
        msg.levels.push_back(static_cast<std::int16_t>(r.Get(16)));
      }
      break;
    }
  }
  return msg;
}

std::int64_t BitCost(const CompressorSpec& spec, const CompressedMsg& msg) {
  spec.Validate();
  CheckMsg(msg.kind == spec.kind, "kind");
  CheckMsg(msg.d == spec.d, "dimension");
  switch (spec.kind) {
    case CompressorKind::kIdentity:
      CheckMsg(msg.values.size() == static_cast<size_t>(spec.d), "payload size");
      break;
    case CompressorKind::kTopK:
    case CompressorKind::kRandK:
      CheckMsg(msg.indices.size() == static_cast<size_t>(spec.k), "payload size");
      CheckMsg(msg.values.size() == static_cast<size_t>(spec.k), "payload size");
      break;
    case CompressorKind::kDithering:
      CheckMsg(msg.s == spec.s, "levels parameter");
      CheckMsg(msg.indices.size() == msg.levels.size(), "payload size");
      break;
  }
  return MessageBits(spec);
}

}  // namespace eclk
