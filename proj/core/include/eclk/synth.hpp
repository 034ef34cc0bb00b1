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

#ifndef ECLK_SYNTH_HPP_
#define ECLK_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "eclk/dataset.hpp"

namespace eclk {

// Seeded generator of one-hot categorical classification data.  Each sample
// picks one category per group (so rows have exactly groups.size() ones) and
// the label comes from a planted linear model.  With sign_labels the label is
// the sign of the logit with flip_prob contamination (near-separable data);
// otherwise it is drawn from the logistic probability (irreducibly noisy
// data).
struct SynthSpec {
  int num_samples = 0;
  std::vector<int> groups;   // one-hot block sizes; d = sum
  double margin_scale = 2.0; // typical |logit| magnitude
  bool sign_labels = false;
  double flip_prob = 0.0;
  std::uint64_t seed = 1;
};

Dataset MakeSynthDataset(const SynthSpec& spec);

// Shape stand-ins for two classic benchmark corpora, used where the real
// files are unavailable.  Same sample counts, dimensions, one-hot row
// structure, and separability character; generated deterministically from a
// fixed seed.
//   "mushrooms-like": 8124 x 112, 22 one-hot groups, nearly separable.
//   "a5a-like":       6414 x 123, 14 one-hot groups, noisy labels.
SynthSpec MushroomsLikeSpec();
SynthSpec A5aLikeSpec();

// Returns the named preset ("mushrooms-like" or "a5a-like"); throws
// std::invalid_argument for unknown names.
SynthSpec PresetByName(const std::string& name);

}  // namespace eclk

#endif  // ECLK_SYNTH_HPP_
