// Copyright 2026 The latentprop Authors
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

#ifndef LATENTPROP_SYNTHETIC_HPP_
#define LATENTPROP_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"

namespace latentprop {

// Planted latent-space follow graph. Node features are drawn from an
// isotropic Gaussian mixture; node u follows v with probability
// proportional to attractiveness(v) * exp(-beta * ||e(u) - e(v)||_2^2),
// scaled per source so that its expected out-degree equals
// mean_out_degree (probabilities are capped at 1 and the excess is
// redistributed). Elites have attractiveness `elite_attractiveness`, every
// other node 1.
struct PlantedConfig {
  std::size_t nodes = 2000;
  std::size_t elites = 50;
  std::size_t dimension = 2;
  std::size_t components = 4;
  // components x dimension, row-major. When empty, centers are drawn
  // uniformly from [-center_range, center_range]^dimension.
  std::vector<double> centers;
  double center_range = 1.5;
  double spread = 0.5;
  double beta = 5.0;
  double elite_attractiveness = 20.0;
  double mean_out_degree = 20.0;
  std::uint64_t seed = 1;
  // 0 = hardware concurrency. Output does not depend on it.
  unsigned threads = 0;

  // Throws kInvalidArgument / kInfeasible on bad values.
  void validate() const;

  static PlantedConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct PlantedGraph {
  DirectedGraph graph;
  // Every node carries a Known feature.
  FeatureStore truth;
  NodeSet elites;
};

// Labels are "n<index>". Deterministic for a given config regardless of
// thread count.
PlantedGraph generate_planted(const PlantedConfig& config);

}  // namespace latentprop

#endif  // LATENTPROP_SYNTHETIC_HPP_
