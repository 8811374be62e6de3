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

#include "latentprop/method_a.hpp"

#include "latentprop/error.hpp"

namespace latentprop {

StepDelta step_method_a(PropagationState& state, const DirectedGraph& g) {
  const PropagationParams& params = state.params();
  const Direction d = params.direction;
  const FeatureStore& est = state.estimates();
  const std::size_t dim = est.dimension();

  const auto scored =
      neighborhood_coherence(g, est, state.coherent(), d, params.p);

  StepDelta delta;
  for (std::size_t i = 0; i < scored.neighborhood.size(); ++i) {
    const NodeId u = scored.neighborhood[i];
    if (!state.is_unvisited(u)) continue;
    if (scored.incoherence[i] <= params.epsilon) {
      delta.added.push_back(u);
    } else {
      delta.rejected.push_back(u);
    }
  }

  std::vector<double> estimates(delta.added.size() * dim, 0.0);
  for (std::size_t i = 0; i < delta.added.size(); ++i) {
    double* row = estimates.data() + i * dim;
    std::size_t count = 0;
    for (const NodeId w : g.neighbors(delta.added[i], opposite(d))) {
      if (!state.is_coherent(w)) continue;
      const FeatureView f = est.feature(w);
      for (std::size_t k = 0; k < dim; ++k) row[k] += f[k];
      ++count;
    }
    for (std::size_t k = 0; k < dim; ++k) row[k] /= static_cast<double>(count);
  }

  state.commit(delta, estimates);
  return delta;
}

PropagationState run_method_a(const DirectedGraph& g, const FeatureStore& known,
                              std::span<const NodeId> seed,
                              const PropagationParams& params, int max_steps) {
  if (max_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
  PropagationState state = init_state(g, known, seed, params);
  for (int i = 0; i < max_steps; ++i) {
    const StepDelta delta = step_method_a(state, g);
    if (delta.added.empty() && delta.rejected.empty()) break;
  }
  return state;
}

}  // namespace latentprop
