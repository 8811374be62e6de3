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

#include "latentprop/method_b.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "latentprop/error.hpp"

namespace latentprop {
namespace {

constexpr std::uint32_t kNoPivot = std::numeric_limits<std::uint32_t>::max();

}  // namespace

PivotSet compute_pivots(const PropagationState& state, const DirectedGraph& g) {
  const PropagationParams& params = state.params();
  const Direction d = params.direction;
  const FeatureStore& est = state.estimates();

  PivotSet pivots;
  pivots.step = state.step();
  pivots.dimension = est.dimension();

  const auto scored =
      neighborhood_coherence(g, est, state.coherent(), d, params.p);
  for (std::size_t i = 0; i < scored.neighborhood.size(); ++i) {
    const NodeId u = scored.neighborhood[i];
    if (scored.incoherence[i] > params.epsilon) {
      if (state.is_unvisited(u)) pivots.rejected.push_back(u);
      continue;
    }
    if (state.is_incoherent(u)) continue;
    pivots.nodes.push_back(u);
    const std::size_t row = pivots.provisional.size();
    pivots.provisional.resize(row + pivots.dimension, 0.0);
    std::size_t count = 0;
    for (const NodeId w : g.neighbors(u, opposite(d))) {
      if (!state.is_coherent(w)) continue;
      const FeatureView f = est.feature(w);
      for (std::size_t k = 0; k < pivots.dimension; ++k) {
        pivots.provisional[row + k] += f[k];
      }
      ++count;
    }
    for (std::size_t k = 0; k < pivots.dimension; ++k) {
      pivots.provisional[row + k] /= static_cast<double>(count);
    }
  }
  return pivots;
}

NodeSet co_neighbors(const DirectedGraph& g, NodeId v,
                     std::span<const NodeId> pivots,
                     std::span<const NodeId> featured, Direction d) {
  const NodeMask is_pivot(g.node_count(), pivots);
  const NodeMask is_featured(g.node_count(), featured);
  NodeMask seen(g.node_count());
  NodeSet out;
  for (const NodeId t : g.neighbors(v, d)) {
    if (!is_pivot.test(t)) continue;
    for (const NodeId w : g.neighbors(t, opposite(d))) {
      if (is_featured.test(w) && !seen.test(w)) {
        seen.set(w);
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CandidateOutcome> evaluate_candidates(
    const PropagationState& state, const DirectedGraph& g,
    const PivotSet& pivots, std::span<const NodeId> candidates) {
  const PropagationParams& params = state.params();
  const Direction d = params.direction;
  const FeatureStore& est = state.estimates();
  const std::size_t dim = est.dimension();

  std::vector<std::uint32_t> pivot_index(g.node_count(), kNoPivot);
  for (std::size_t i = 0; i < pivots.nodes.size(); ++i) {
    pivot_index[pivots.nodes[i]] = static_cast<std::uint32_t>(i);
  }
  // Visit stamps for co-neighbor deduplication; stamp 0 means unseen.
  std::vector<std::uint32_t> stamp(g.node_count(), 0);
  std::uint32_t current = 0;

  std::vector<CandidateOutcome> outcomes;
  outcomes.reserve(candidates.size());
  std::vector<FeatureView> points;
  std::vector<NodeId> via;
  NodeSet co;
  for (const NodeId v : candidates) {
    CandidateOutcome& out = outcomes.emplace_back();
    out.node = v;
    if (!state.is_unvisited(v)) continue;

    via.clear();
    for (const NodeId t : g.neighbors(v, d)) {
      if (pivot_index[t] != kNoPivot) via.push_back(t);
    }
    if (via.empty()) continue;

    ++current;
    co.clear();
    for (const NodeId t : via) {
      for (const NodeId w : g.neighbors(t, opposite(d))) {
        if (state.is_coherent(w) && stamp[w] != current) {
          stamp[w] = current;
          co.push_back(w);
        }
      }
    }
    if (co.empty()) {
      throw Error(ErrorCode::kInternal,
                  "candidate reached a pivot without co-neighbors");
    }
    out.co_neighbor_count = co.size();

    points.clear();
    if (params.candidate_test == CandidateTest::kPivotFeatures) {
      for (const NodeId t : via) points.push_back(pivots.feature(pivot_index[t]));
    } else {
      for (const NodeId w : co) points.push_back(est.feature(w));
    }
    out.incoherence = incoherence(points, params.p);
    if (!(out.incoherence <= params.epsilon)) continue;

    out.accepted = true;
    out.estimate.assign(dim, 0.0);
    for (const NodeId w : co) {
      const FeatureView f = est.feature(w);
      for (std::size_t k = 0; k < dim; ++k) out.estimate[k] += f[k];
    }
    for (double& x : out.estimate) x /= static_cast<double>(co.size());
  }
  return outcomes;
}

StepDelta step_method_b(PropagationState& state, const DirectedGraph& g,
                        PivotSet* pivots_out) {
  PivotSet pivots = compute_pivots(state, g);
  const NodeSet candidates =
      neighborhood_of_set(g, pivots.nodes, opposite(state.params().direction));
  const auto outcomes = evaluate_candidates(state, g, pivots, candidates);

  StepDelta delta;
  std::vector<double> estimates;
  for (const CandidateOutcome& o : outcomes) {
    if (!o.accepted) continue;
    delta.added.push_back(o.node);
    estimates.insert(estimates.end(), o.estimate.begin(), o.estimate.end());
  }
  for (const NodeId v : pivots.rejected) {
    if (!std::binary_search(delta.added.begin(), delta.added.end(), v)) {
      delta.rejected.push_back(v);
    }
  }

  state.commit(delta, estimates, pivots.nodes.size());
  if (pivots_out != nullptr) *pivots_out = std::move(pivots);
  return delta;
}

PropagationState run_method_b(const DirectedGraph& g, const FeatureStore& known,
                              std::span<const NodeId> seed,
                              const PropagationParams& params, int max_steps,
                              std::vector<PivotSet>* pivot_log) {
  if (max_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_steps must be >= 1");
  }
  PropagationState state = init_state(g, known, seed, params);
  for (int i = 0; i < max_steps; ++i) {
    PivotSet pivots;
    const StepDelta delta = step_method_b(state, g, &pivots);
    if (pivot_log != nullptr) pivot_log->push_back(std::move(pivots));
    if (delta.added.empty() && delta.rejected.empty()) break;
  }
  return state;
}

}  // namespace latentprop
