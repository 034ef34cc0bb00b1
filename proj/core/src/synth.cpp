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

#include "eclk/synth.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eclk/rng.hpp"

namespace eclk {

namespace {

// Category probabilities proportional to exp(N(0,1)): a few dominant values
// per attribute, like real categorical survey data.
std::vector<double> GroupCdf(int size, RngStream& rng) {
  std::vector<double> w(static_cast<size_t>(size));
  double total = 0.0;
  for (double& v : w) {
    v = std::exp(rng.NextGaussian());
    total += v;
  }
  double acc = 0.0;
  for (double& v : w) {
    acc += v / total;
    v = acc;
  }
  w.back() = 1.0;
  return w;
}

int SampleCdf(const std::vector<double>& cdf, RngStream& rng) {
  const double u = rng.NextUnit();
  for (size_t i = 0; i < cdf.size(); ++i)
    if (u < cdf[i]) return static_cast<int>(i);
  return static_cast<int>(cdf.size()) - 1;
}

double StableSigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Dataset MakeSynthDataset(const SynthSpec& spec) {
  if (spec.num_samples < 1 || spec.groups.empty())
    throw std::invalid_argument("MakeSynthDataset: need samples and groups");
  const int d = std::accumulate(spec.groups.begin(), spec.groups.end(), 0);
  const auto g = static_cast<double>(spec.groups.size());

  RngStream model_rng = RngStream::Derive(spec.seed, 0xA0);
  RngStream cat_rng = RngStream::Derive(spec.seed, 0xA1);
  RngStream label_rng = RngStream::Derive(spec.seed, 0xA2);

  // Planted weights scaled so a row's logit has sd about margin_scale.
  std::vector<double> w(static_cast<size_t>(d));
  for (double& v : w) v = model_rng.NextGaussian() * spec.margin_scale / std::sqrt(g);

  std::vector<std::vector<double>> cdfs;
  cdfs.reserve(spec.groups.size());
  for (int size : spec.groups) cdfs.push_back(GroupCdf(size, model_rng));

  Dataset data;
  data.d = d;
  data.num_samples = spec.num_samples;
  data.row_ptr.push_back(0);
  for (int i = 0; i < spec.num_samples; ++i) {
    double logit = 0.0;
    int offset = 0;
    for (size_t gi = 0; gi < spec.groups.size(); ++gi) {
      const int c = SampleCdf(cdfs[gi], cat_rng);
      const int idx = offset + c;
      data.col.push_back(idx);
      data.val.push_back(1.0);
      logit += w[static_cast<size_t>(idx)];
      offset += spec.groups[gi];
    }
    data.row_ptr.push_back(static_cast<int>(data.col.size()));
    double label;
    if (spec.sign_labels) {
      label = logit >= 0.0 ? 1.0 : -1.0;
      if (spec.flip_prob > 0.0 && label_rng.Bernoulli(spec.flip_prob)) label = -label;
    } else {
      label = label_rng.Bernoulli(StableSigmoid(logit)) ? 1.0 : -1.0;
    }
    data.y.push_back(label);
  }
  return data;
}

SynthSpec MushroomsLikeSpec() {
  SynthSpec spec;
  spec.num_samples = 8124;
  // 22 attributes, block sizes summing to 112.
  spec.groups = {6, 4, 8, 2, 9, 4, 3, 2, 9, 2, 5, 4, 4, 8, 8, 4, 3, 5, 8, 6, 4, 4};
  spec.margin_scale = 4.0;
  spec.sign_labels = true;
  spec.flip_prob = 0.001;
  spec.seed = 8124;
  return spec;
}

SynthSpec A5aLikeSpec() {
  SynthSpec spec;
  spec.num_samples = 6414;
  // 14 attributes, block sizes summing to 123.
  spec.groups = {5, 9, 16, 7, 14, 6, 5, 2, 41, 2, 3, 4, 5, 4};
  spec.margin_scale = 1.75;
  spec.sign_labels = false;
  spec.flip_prob = 0.0;
  spec.seed = 6414;
  return spec;
}

SynthSpec PresetByName(const std::string& name) {
  if (name == "mushrooms-like") return MushroomsLikeSpec();
  if (name == "a5a-like") return A5aLikeSpec();
  throw std::invalid_argument("unknown synthetic preset: " + name);
}

}  // namespace eclk
