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

#ifndef LATENTPROP_PROPAGATION_STATE_HPP_
#define LATENTPROP_PROPAGATION_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"

namespace latentprop {

// How Method B decides whether a candidate reached through pivots is
// coherent enough to be featured.
enum class CandidateTest {
  // Incoherence of the provisional features of the pivots the candidate
  // connects to.
  kPivotFeatures,
  // Incoherence of the candidate's co-neighbors in the featured set.
  kCoNeighborFeatures,
};

struct PropagationParams {
  Direction direction = Direction::kUp;
  double epsilon = 0.0;
  NormOrder p;
  CandidateTest candidate_test = CandidateTest::kPivotFeatures;
};

struct StepLog {
  int step = 0;
  std::size_t added = 0;
  std::size_t rejected = 0;
  // Method B only.
  std::optional<std::size_t> pivots;
};

// Nodes accepted into and rejected from the featured set in one step.
struct StepDelta {
  NodeSet added;
  NodeSet rejected;
};

// The coherent sequence V_0 c V_1 c ... together with the incoherent
// sequence and the estimates made so far. Seed nodes keep their known
// features; every other featured node is Estimated at the step that added it.
class PropagationState {
 public:
  const NodeSet& coherent() const noexcept { return coherent_; }
  const NodeSet& incoherent() const noexcept { return incoherent_; }
  const NodeSet& seed() const noexcept { return seed_; }
  int step() const noexcept { return step_; }
  const PropagationParams& params() const noexcept { return params_; }
  const std::vector<StepLog>& log() const noexcept { return log_; }
  const FeatureStore& estimates() const noexcept { return estimates_; }

  bool is_coherent(NodeId v) const noexcept { return status_[v] == kCoherent; }
  bool is_incoherent(NodeId v) const noexcept {
    return status_[v] == kIncoherent;
  }
  bool is_unvisited(NodeId v) const noexcept { return status_[v] == kNone; }
  std::size_t node_count() const noexcept { return status_.size(); }

  // Merges a step's additions. `estimates` is row-major, one row per member
  // of delta.added. Throws kInternal if the disjointness invariants would
  // break.
  void commit(const StepDelta& delta, std::span<const double> estimates,
              std::optional<std::size_t> pivot_count = std::nullopt);

 private:
  friend PropagationState init_state(const DirectedGraph& g,
                                     const FeatureStore& known,
                                     std::span<const NodeId> seed,
                                     const PropagationParams& params);

  enum Status : std::uint8_t { kNone, kCoherent, kIncoherent };

  PropagationParams params_;
  NodeSet seed_;
  NodeSet coherent_;
  NodeSet incoherent_;
  std::vector<std::uint8_t> status_;
  FeatureStore estimates_;
  std::vector<StepLog> log_;
  int step_ = 0;
};

// V_0 = seed, empty incoherent set, step 0. Seed features are copied from
// `known` as Known entries. Throws kEmpty for an empty seed,
// kMissingFeature when a seed node lacks a feature and kInvalidArgument for
// a negative epsilon.
PropagationState init_state(const DirectedGraph& g, const FeatureStore& known,
                            std::span<const NodeId> seed,
                            const PropagationParams& params);

}  // namespace latentprop

#endif  // LATENTPROP_PROPAGATION_STATE_HPP_
