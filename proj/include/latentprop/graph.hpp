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

#ifndef LATENTPROP_GRAPH_HPP_
#define LATENTPROP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latentprop {

using NodeId = std::uint32_t;

// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

// Up follows edges forward (followees); Down follows them backward
// (followers).
enum class Direction { kUp, kDown };

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::kUp ? Direction::kDown : Direction::kUp;
}

std::string_view to_string(Direction d) noexcept;
Direction parse_direction(std::string_view text);

// Immutable directed graph in compressed sparse row form, stored in both
// directions. An edge (u, v) means "u follows v". Neighbor lists are sorted
// by id; there are no self-loops and no parallel edges.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  bool contains(NodeId v) const noexcept { return v < node_count(); }

  // Throws kNotFound for ids outside the graph.
  std::span<const NodeId> neighbors(NodeId v, Direction d) const;

  std::size_t degree(NodeId v, Direction d) const {
    return neighbors(v, d).size();
  }

  bool has_edge(NodeId from, NodeId to) const;

  const std::string& label(NodeId v) const;
  // Throws kNotFound for unknown labels.
  NodeId id(std::string_view label) const;
  bool find(std::string_view label, NodeId* out) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::size_t self_loops_dropped() const noexcept { return self_loops_; }
  std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

 private:
  friend class GraphBuilder;

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId, StringHash, std::equal_to<>> ids_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::size_t self_loops_ = 0;
  std::size_t duplicates_ = 0;
};

// Accumulates labelled edges and freezes them into a DirectedGraph. Ids are
// assigned densely in order of first appearance.
class GraphBuilder {
 public:
  NodeId add_node(std::string_view label);
  void add_edge(std::string_view follower, std::string_view followee);
  void add_edge(NodeId follower, NodeId followee);

  std::size_t node_count() const noexcept { return labels_.size(); }

  DirectedGraph build() &&;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId, DirectedGraph::StringHash,
                     std::equal_to<>>
      ids_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::size_t self_loops_ = 0;
};

struct EdgeListFormat {
  char separator = ',';
  char comment = '#';
};

// Reads `follower<SEP>followee` records. Blank lines and comment lines are
// skipped; surrounding whitespace is trimmed from both labels.
DirectedGraph load_edge_list(std::istream& in, const EdgeListFormat& format = {});
DirectedGraph load_edge_list_file(const std::string& path,
                                  const EdgeListFormat& format = {});

void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     char separator = ',');
// CSV `label,node_id`.
void write_label_map(std::ostream& out, const DirectedGraph& g);

// Union of the d-neighborhoods of every member of `nodes`. The result may
// intersect `nodes`.
NodeSet neighborhood_of_set(const DirectedGraph& g, std::span<const NodeId> nodes,
                            Direction d);

// Sorts and deduplicates in place.
void normalize(NodeSet& nodes);
NodeSet make_node_set(std::vector<NodeId> nodes);

// Dense membership mask over all graph nodes.
class NodeMask {
 public:
  explicit NodeMask(std::size_t n = 0) : bits_(n, 0) {}
  NodeMask(std::size_t n, std::span<const NodeId> members);

  bool test(NodeId v) const noexcept { return bits_[v] != 0; }
  void set(NodeId v) noexcept { bits_[v] = 1; }
  void reset(NodeId v) noexcept { bits_[v] = 0; }
  std::size_t size() const noexcept { return bits_.size(); }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace latentprop

#endif  // LATENTPROP_GRAPH_HPP_
