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

#ifndef LATENTPROP_METHOD_A_HPP_
#define LATENTPROP_METHOD_A_HPP_

#include <span>

#include "latentprop/propagation_state.hpp"

namespace latentprop {

// One step of homophily propagation. With d the state's direction:
//   added    = n^eps_d(V_i) minus (V_i u Vbar_i)
//   rejected = n_d(V_i) minus (V_i u Vbar_i u added)
// Each added node is estimated as the mean estimate of its V_i neighbors in
// the opposite direction. Empty deltas mean a fixed point; the step counter
// still advances.
StepDelta step_method_a(PropagationState& state, const DirectedGraph& g);

// Iterates step_method_a until a fixed point or `max_steps` steps.
// Throws kInvalidArgument when max_steps < 1.
PropagationState run_method_a(const DirectedGraph& g, const FeatureStore& known,
                              std::span<const NodeId> seed,
                              const PropagationParams& params, int max_steps);

}  // namespace latentprop

#endif  // LATENTPROP_METHOD_A_HPP_
