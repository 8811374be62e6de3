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

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's metric and set helpers.

#ifndef LATENTPROP_TESTS_TEST_SUPPORT_HPP_
#define LATENTPROP_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"

namespace latentprop::testing {

inline DirectedGraph make_graph(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& extra_nodes = {}) {
  GraphBuilder b;
  for (const auto& label : extra_nodes) b.add_node(label);
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

// Random directed graph on n nodes labelled "0".."n-1" (ids equal labels).
inline DirectedGraph random_graph(std::mt19937_64& rng, std::size_t n,
                                  double edge_prob) {
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  std::bernoulli_distribution coin(edge_prob);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(rng)) {
        b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    }
  }
  return std::move(b).build();
}

inline FeatureStore random_features(std::mt19937_64& rng, std::size_t n,
                                    std::size_t dim, double lo = -2.0,
                                    double hi = 2.0) {
  FeatureStore store(n, dim);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> f(dim);
  for (std::size_t v = 0; v < n; ++v) {
    for (double& x : f) x = u(rng);
    store.set_known(static_cast<NodeId>(v), f);
  }
  return store;
}

inline NodeSet random_subset(std::mt19937_64& rng, std::size_t n, double prob) {
  NodeSet out;
  std::bernoulli_distribution coin(prob);
  for (std::size_t v = 0; v < n; ++v) {
    if (coin(rng)) out.push_back(static_cast<NodeId>(v));
  }
  if (out.empty()) out.push_back(static_cast<NodeId>(rng() % n));
  return out;
}

// ---- oracles -------------------------------------------------------------

inline double oracle_norm(const std::vector<double>& a,
                          const std::vector<double>& b, double p) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += std::pow(std::fabs(a[k] - b[k]), p);
  }
  return std::pow(s, 1.0 / p);
}

inline std::vector<double> to_vec(FeatureView v) { return {v.begin(), v.end()}; }

inline double oracle_incoherence(const std::vector<std::vector<double>>& pts,
                                 double p) {
  const std::size_t dim = pts.front().size();
  std::vector<double> c(dim, 0.0);
  for (const auto& x : pts) {
    for (std::size_t k = 0; k < dim; ++k) c[k] += x[k];
  }
  for (double& x : c) x /= static_cast<double>(pts.size());
  double s = 0.0;
  for (const auto& x : pts) {
    const double d = oracle_norm(x, c, p);
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(pts.size()));
}

// True iff edge u->v by scanning the full out-list.
inline bool oracle_edge(const DirectedGraph& g, NodeId u, NodeId v) {
  for (const NodeId w : g.neighbors(u, Direction::kUp)) {
    if (w == v) return true;
  }
  return false;
}

// n_d(u) for a single node by scanning every node of the graph.
inline std::set<NodeId> oracle_neighbors(const DirectedGraph& g, NodeId u,
                                         Direction d) {
  std::set<NodeId> out;
  for (NodeId w = 0; w < g.node_count(); ++w) {
    if (d == Direction::kUp ? oracle_edge(g, u, w) : oracle_edge(g, w, u)) {
      out.insert(w);
    }
  }
  return out;
}

// {u in n_d(V) : I(n_dbar(u) & V) <= eps}, enumerated node by node.
inline NodeSet oracle_coherent_neighborhood(const DirectedGraph& g,
                                            const FeatureStore& store,
                                            const NodeSet& set, Direction d,
                                            double eps, double p) {
  const std::set<NodeId> members(set.begin(), set.end());
  NodeSet out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::vector<std::vector<double>> back;
    for (const NodeId v : members) {
      const bool linked =
          d == Direction::kUp ? oracle_edge(g, v, u) : oracle_edge(g, u, v);
      if (linked) back.push_back(to_vec(store.feature(v)));
    }
    if (!back.empty() && oracle_incoherence(back, p) <= eps) out.push_back(u);
  }
  return out;
}

// V & n_dbar(n_d(v) & P) as a double loop over pivots and featured nodes.
inline NodeSet oracle_co_neighbors(const DirectedGraph& g, NodeId v,
                                   const NodeSet& pivots,
                                   const NodeSet& featured, Direction d) {
  std::set<NodeId> out;
  for (const NodeId p : pivots) {
    const bool v_to_p =
        d == Direction::kUp ? oracle_edge(g, v, p) : oracle_edge(g, p, v);
    if (!v_to_p) continue;
    for (const NodeId u : featured) {
      const bool u_to_p =
          d == Direction::kUp ? oracle_edge(g, u, p) : oracle_edge(g, p, u);
      if (u_to_p) out.insert(u);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace latentprop::testing

#endif  // LATENTPROP_TESTS_TEST_SUPPORT_HPP_
