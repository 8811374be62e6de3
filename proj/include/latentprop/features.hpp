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

#ifndef LATENTPROP_FEATURES_HPP_
#define LATENTPROP_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "latentprop/graph.hpp"

namespace latentprop {

using FeatureVector = std::vector<double>;
using FeatureView = std::span<const double>;

// Order p of the Minkowski norm used for both estimation error and
// incoherence. Valid range is [1, inf).
class NormOrder {
 public:
  constexpr NormOrder() = default;
  explicit NormOrder(double p);
  constexpr double value() const noexcept { return p_; }

 private:
  double p_ = 2.0;
};

// Minkowski distance ||a - b||_p.
double distance(FeatureView a, FeatureView b, NormOrder p);

enum class Provenance : std::uint8_t { kAbsent, kKnown, kEstimated };

// Per-node feature vectors of a fixed dimension over the nodes of one graph.
// Known entries are immutable once set; estimated entries carry the
// propagation step that produced them.
class FeatureStore {
 public:
  FeatureStore() = default;
  FeatureStore(std::size_t node_count, std::size_t dimension);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t node_count() const noexcept { return provenance_.size(); }
  // Number of nodes holding a feature.
  std::size_t size() const noexcept { return populated_; }

  bool has(NodeId v) const noexcept {
    return v < provenance_.size() && provenance_[v] != Provenance::kAbsent;
  }
  Provenance provenance(NodeId v) const;
  // Step index for estimated entries, -1 otherwise.
  int step(NodeId v) const;

  // Throws kMissingFeature when v has no entry.
  FeatureView feature(NodeId v) const;

  // Both throw kDimensionMismatch on wrong length and kInvalidArgument on
  // non-finite components. Writes over a Known entry throw kInvalidArgument.
  void set_known(NodeId v, FeatureView value);
  void set_estimated(NodeId v, FeatureView value, int step);

  // Nodes holding a feature, ascending.
  NodeSet nodes() const;

 private:
  void check_write(NodeId v, FeatureView value) const;

  std::size_t dim_ = 0;
  std::size_t populated_ = 0;
  std::vector<double> values_;
  std::vector<Provenance> provenance_;
  std::vector<int> steps_;
};

// ||estimate - truth||_p.
double estimation_error(FeatureView estimate, FeatureView truth,
                        NormOrder p = {});

// Arithmetic mean of per-node estimation errors over `nodes`.
double mean_error(std::span<const NodeId> nodes, const FeatureStore& estimates,
                  const FeatureStore& truth, NormOrder p = {});

FeatureVector centroid(std::span<const NodeId> nodes, const FeatureStore& store);

// Root mean square of the p-distances from each member to the centroid.
// Singletons have incoherence 0.
double incoherence(std::span<const NodeId> nodes, const FeatureStore& store,
                   NormOrder p = {});

// Same quantity over an explicit list of points.
double incoherence(std::span<const FeatureView> points, NormOrder p = {});

// Members u of n_d(V) for which I(n_{opposite d}(u) & V) <= epsilon. The
// comparison is inclusive. Every member of V must have a feature.
NodeSet coherent_neighborhood(const DirectedGraph& g, const FeatureStore& store,
                              std::span<const NodeId> nodes, Direction d,
                              double epsilon, NormOrder p = {});

// Incoherence of the back-connections of every member of n_d(V), in the
// order of neighborhood_of_set(g, V, d).
struct NeighborhoodCoherence {
  NodeSet neighborhood;
  std::vector<double> incoherence;
};
NeighborhoodCoherence neighborhood_coherence(const DirectedGraph& g,
                                             const FeatureStore& store,
                                             std::span<const NodeId> nodes,
                                             Direction d, NormOrder p = {});

// CSV `node_label,f1,...,fN` with a header row. A trailing `provenance`
// column is accepted and ignored; every loaded row becomes Known. Rows whose
// label is not a graph node are skipped and counted in `skipped`.
FeatureStore load_features(std::istream& in, const DirectedGraph& g,
                           std::size_t* skipped = nullptr);
FeatureStore load_features_file(const std::string& path, const DirectedGraph& g,
                                std::size_t* skipped = nullptr);

void write_features(std::ostream& out, const FeatureStore& store,
                    const DirectedGraph& g, bool with_provenance = false);

// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_double(double x);

}  // namespace latentprop

#endif  // LATENTPROP_FEATURES_HPP_
