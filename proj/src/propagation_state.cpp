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

#include "latentprop/propagation_state.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "latentprop/error.hpp"

namespace latentprop {
namespace {

NodeSet merge_sorted(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PropagationState init_state(const DirectedGraph& g, const FeatureStore& known,
                            std::span<const NodeId> seed,
                            const PropagationParams& params) {
  if (seed.empty()) {
    throw Error(ErrorCode::kEmpty, "propagation needs a non-empty seed set");
  }
  if (!(params.epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  if (known.node_count() != g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature store does not match the graph's node count");
  }
  PropagationState state;
  state.params_ = params;
  state.seed_ = make_node_set({seed.begin(), seed.end()});
  state.status_.assign(g.node_count(), PropagationState::kNone);
  state.estimates_ = FeatureStore(g.node_count(), known.dimension());
  for (const NodeId v : state.seed_) {
    if (!g.contains(v)) {
      throw Error(ErrorCode::kNotFound,
                  "seed node id " + std::to_string(v) + " is not in the graph");
    }
    if (known.provenance(v) != Provenance::kKnown) {
      throw Error(ErrorCode::kMissingFeature,
                  "seed node '" + g.label(v) + "' has no known feature");
    }
    state.estimates_.set_known(v, known.feature(v));
    state.status_[v] = PropagationState::kCoherent;
  }
  state.coherent_ = state.seed_;
  return state;
}

void PropagationState::commit(const StepDelta& delta,
                              std::span<const double> estimates,
                              std::optional<std::size_t> pivot_count) {
  const std::size_t dim = estimates_.dimension();
  if (estimates.size() != delta.added.size() * dim) {
    throw Error(ErrorCode::kInternal, "estimate block does not match additions");
  }
  for (const NodeId v : delta.added) {
    if (status_[v] != kNone) {
      throw Error(ErrorCode::kInternal,
                  "node id " + std::to_string(v) + " added twice");
    }
  }
  for (const NodeId v : delta.rejected) {
    if (status_[v] != kNone ||
        std::binary_search(delta.added.begin(), delta.added.end(), v)) {
      throw Error(ErrorCode::kInternal,
                  "node id " + std::to_string(v) + " rejected after a visit");
    }
  }
  for (std::size_t i = 0; i < delta.added.size(); ++i) {
    const NodeId v = delta.added[i];
    estimates_.set_estimated(v, estimates.subspan(i * dim, dim), step_);
    status_[v] = kCoherent;
  }
  for (const NodeId v : delta.rejected) status_[v] = kIncoherent;
  coherent_ = merge_sorted(coherent_, delta.added);
  incoherent_ = merge_sorted(incoherent_, delta.rejected);
  log_.push_back(
      StepLog{step_, delta.added.size(), delta.rejected.size(), pivot_count});
  ++step_;
}

}  // namespace latentprop
