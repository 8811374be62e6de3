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

#ifndef LATENTPROP_METHOD_B_HPP_
#define LATENTPROP_METHOD_B_HPP_

#include <span>
#include <vector>

#include "latentprop/propagation_state.hpp"

namespace latentprop {

// Coherent pivots of one step. Pivots get a provisional feature (mean of
// their featured neighbors in the opposite direction) that lives only as
// long as this object; they are never written to the estimate store.
struct PivotSet {
  int step = 0;
  std::size_t dimension = 0;
  NodeSet nodes;
  // Row-major, aligned with `nodes`.
  std::vector<double> provisional;
  // Members of n_d(V_i) that failed the coherence test and are not yet in
  // V_i or Vbar_i.
  NodeSet rejected;

  FeatureView feature(std::size_t index) const {
    return {provisional.data() + index * dimension, dimension};
  }
};

// P = n^eps_d(V_i) minus Vbar_i, with provisional features and the failed
// pivot candidates.
PivotSet compute_pivots(const PropagationState& state, const DirectedGraph& g);

// V & n_{opposite d}(n_d(v) & P).
NodeSet co_neighbors(const DirectedGraph& g, NodeId v,
                     std::span<const NodeId> pivots,
                     std::span<const NodeId> featured, Direction d);

struct CandidateOutcome {
  NodeId node = 0;
  bool accepted = false;
  // Incoherence measured by the configured CandidateTest.
  double incoherence = 0.0;
  std::size_t co_neighbor_count = 0;
  // Empty unless accepted.
  FeatureVector estimate;
};

// Runs the candidate test and the co-neighbor estimator for the given nodes.
// Candidates that are already featured, blacklisted or not reachable from
// a pivot are reported as not accepted.
std::vector<CandidateOutcome> evaluate_candidates(
    const PropagationState& state, const DirectedGraph& g,
    const PivotSet& pivots, std::span<const NodeId> candidates);

// One step of structural-similarity propagation:
//   added    = {v in n_{opposite d}(P) : I(n_d(v) & P) <= eps} minus
//              (V_i u Vbar_i)
//   rejected = pivots.rejected minus added
// Added nodes are estimated as the mean over their co-neighbors in V_i.
StepDelta step_method_b(PropagationState& state, const DirectedGraph& g,
                        PivotSet* pivots_out = nullptr);

// Iterates step_method_b until a fixed point or `max_steps` steps. When
// `pivot_log` is given it receives the pivot set of every step.
PropagationState run_method_b(const DirectedGraph& g, const FeatureStore& known,
                              std::span<const NodeId> seed,
                              const PropagationParams& params, int max_steps,
                              std::vector<PivotSet>* pivot_log = nullptr);

}  // namespace latentprop

#endif  // LATENTPROP_METHOD_B_HPP_
