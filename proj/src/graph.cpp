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

#include "latentprop/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>

#include "latentprop/error.hpp"

namespace latentprop {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
               bool forward, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) ++offsets[(forward ? u : v) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    const NodeId src = forward ? u : v;
    targets[cursor[src]++] = forward ? v : u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  return d == Direction::kUp ? "up" : "down";
}

Direction parse_direction(std::string_view text) {
  if (text == "up") return Direction::kUp;
  if (text == "down") return Direction::kDown;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown direction '" + std::string(text) + "' (expected up|down)");
}

std::span<const NodeId> DirectedGraph::neighbors(NodeId v, Direction d) const {
  if (!contains(v)) {
    throw Error(ErrorCode::kNotFound,
                "node id " + std::to_string(v) + " is not in the graph");
  }
  if (d == Direction::kUp) {
    return {out_targets_.data() + out_offsets_[v],
            out_offsets_[v + 1] - out_offsets_[v]};
  }
  return {in_sources_.data() + in_offsets_[v],
          in_offsets_[v + 1] - in_offsets_[v]};
}

bool DirectedGraph::has_edge(NodeId from, NodeId to) const {
  const auto out = neighbors(from, Direction::kUp);
  return std::binary_search(out.begin(), out.end(), to);
}

const std::string& DirectedGraph::label(NodeId v) const {
  if (!contains(v)) {
    throw Error(ErrorCode::kNotFound,
                "node id " + std::to_string(v) + " is not in the graph");
  }
  return labels_[v];
}

bool DirectedGraph::find(std::string_view label, NodeId* out) const {
  const auto it = ids_.find(label);
  if (it == ids_.end()) return false;
  if (out != nullptr) *out = it->second;
  return true;
}

NodeId DirectedGraph::id(std::string_view label) const {
  NodeId v = 0;
  if (!find(label, &v)) {
    throw Error(ErrorCode::kNotFound,
                "node '" + std::string(label) + "' is not in the graph");
  }
  return v;
}

NodeId GraphBuilder::add_node(std::string_view label) {
  if (const auto it = ids_.find(label); it != ids_.end()) return it->second;
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.emplace_back(label);
  ids_.emplace(labels_.back(), id);
  return id;
}

void GraphBuilder::add_edge(std::string_view follower,
                            std::string_view followee) {
  const NodeId u = add_node(follower);
  const NodeId v = add_node(followee);
  add_edge(u, v);
}

void GraphBuilder::add_edge(NodeId follower, NodeId followee) {
  if (follower >= labels_.size() || followee >= labels_.size()) {
    throw Error(ErrorCode::kNotFound, "edge endpoint was never added");
  }
  if (follower == followee) {
    ++self_loops_;
    return;
  }
  edges_.emplace_back(follower, followee);
}

DirectedGraph GraphBuilder::build() && {
  std::sort(edges_.begin(), edges_.end());
  const auto last = std::unique(edges_.begin(), edges_.end());
  const auto duplicates = static_cast<std::size_t>(edges_.end() - last);
  edges_.erase(last, edges_.end());

  DirectedGraph g;
  const std::size_t n = labels_.size();
  build_csr(n, edges_, true, g.out_offsets_, g.out_targets_);
  build_csr(n, edges_, false, g.in_offsets_, g.in_sources_);
  g.labels_ = std::move(labels_);
  g.ids_.reserve(n);
  for (NodeId i = 0; i < n; ++i) g.ids_.emplace(g.labels_[i], i);
  g.self_loops_ = self_loops_;
  g.duplicates_ = duplicates;
  return g;
}

DirectedGraph load_edge_list(std::istream& in, const EdgeListFormat& format) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == format.comment) continue;
    const auto sep = text.find(format.separator);
    if (sep == std::string_view::npos) {
      throw ParseError(line_no, "expected 'follower" +
                                    std::string(1, format.separator) +
                                    "followee'");
    }
    const std::string_view follower = trim(text.substr(0, sep));
    const std::string_view followee = trim(text.substr(sep + 1));
    if (followee.find(format.separator) != std::string_view::npos) {
      throw ParseError(line_no, "too many fields");
    }
    if (follower.empty() || followee.empty()) {
      throw ParseError(line_no, "empty node label");
    }
    builder.add_edge(follower, followee);
    ++records;
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error in edge list");
  if (records == 0) throw Error(ErrorCode::kEmpty, "edge list is empty");
  auto g = std::move(builder).build();
  if (g.self_loops_dropped() > 0) {
    std::clog << "warning: dropped " << g.self_loops_dropped()
              << " self-loop(s)\n";
  }
  return g;
}

DirectedGraph load_edge_list_file(const std::string& path,
                                  const EdgeListFormat& format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open edge list '" + path + "'");
  return load_edge_list(in, format);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g,
                     char separator) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (const NodeId v : g.neighbors(u, Direction::kUp)) {
      out << g.label(u) << separator << g.label(v) << '\n';
    }
  }
}

void write_label_map(std::ostream& out, const DirectedGraph& g) {
  out << "label,node_id\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.label(v) << ',' << v << '\n';
  }
}

NodeSet neighborhood_of_set(const DirectedGraph& g,
                            std::span<const NodeId> nodes, Direction d) {
  NodeMask seen(g.node_count());
  NodeSet result;
  for (const NodeId v : nodes) {
    for (const NodeId u : g.neighbors(v, d)) {
      if (!seen.test(u)) {
        seen.set(u);
        result.push_back(u);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

void normalize(NodeSet& nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
}

NodeSet make_node_set(std::vector<NodeId> nodes) {
  normalize(nodes);
  return nodes;
}

NodeMask::NodeMask(std::size_t n, std::span<const NodeId> members)
    : bits_(n, 0) {
  for (const NodeId v : members) bits_[v] = 1;
}

}  // namespace latentprop
