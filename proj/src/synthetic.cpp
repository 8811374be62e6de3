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

#include "latentprop/synthetic.hpp"

#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "latentprop/error.hpp"
#include "latentprop/parallel.hpp"
#include "latentprop/rng.hpp"

namespace latentprop {
namespace {

using nlohmann::json;

// Per-source inclusion probabilities min(1, scale * w) whose sum equals
// `target`. Water-filling: nodes whose probability saturates are fixed at 1
// and the scale is recomputed for the rest.
void fill_probabilities(std::vector<double>& w, double target) {
  std::vector<char> clipped(w.size(), 0);
  std::size_t n_clipped = 0;
  std::size_t positive = 0;
  for (const double x : w) positive += x > 0.0;
  if (static_cast<double>(positive) <= target) {
    for (double& x : w) x = x > 0.0 ? 1.0 : 0.0;
    return;
  }
  double scale = 0.0;
  for (;;) {
    double free_mass = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!clipped[i]) free_mass += w[i];
    }
    scale = (target - static_cast<double>(n_clipped)) / free_mass;
    bool changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!clipped[i] && scale * w[i] >= 1.0) {
        clipped[i] = 1;
        ++n_clipped;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = clipped[i] ? 1.0 : scale * w[i];
  }
}

}  // namespace

void PlantedConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "planted config: " + what);
  };
  if (nodes < 2) fail("nodes must be >= 2");
  if (elites < 1 || elites > nodes) fail("elites must lie in [1, nodes]");
  if (dimension < 1) fail("dimension must be >= 1");
  if (components < 1) fail("components must be >= 1");
  if (!centers.empty() && centers.size() != components * dimension) {
    fail("centers must hold components x dimension values");
  }
  if (!(spread >= 0.0) || !std::isfinite(spread)) fail("spread must be >= 0");
  if (!(center_range >= 0.0)) fail("center_range must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be >= 0");
  if (!(elite_attractiveness > 0.0)) {
    fail("elite_attractiveness must be > 0");
  }
  if (!(mean_out_degree > 0.0)) fail("mean_out_degree must be > 0");
  if (mean_out_degree > static_cast<double>(nodes - 1)) {
    throw Error(ErrorCode::kInfeasible,
                "planted config: mean_out_degree " +
                    format_double(mean_out_degree) + " exceeds nodes - 1");
  }
}

PlantedConfig PlantedConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("planted config: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, "planted config must be a JSON object");
  }
  PlantedConfig c;
  try {
    c.nodes = j.value("nodes", c.nodes);
    c.elites = j.value("elites", c.elites);
    c.dimension = j.value("dimension", c.dimension);
    c.components = j.value("components", c.components);
    c.centers = j.value("centers", c.centers);
    c.center_range = j.value("center_range", c.center_range);
    c.spread = j.value("spread", c.spread);
    c.beta = j.value("beta", c.beta);
    c.elite_attractiveness =
        j.value("elite_attractiveness", c.elite_attractiveness);
    c.mean_out_degree = j.value("mean_out_degree", c.mean_out_degree);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("planted config: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    static const char* kKnown[] = {
        "nodes",  "elites", "dimension", "components",
        "centers", "center_range", "spread", "beta",
        "elite_attractiveness", "mean_out_degree", "seed", "threads"};
    bool ok = false;
    for (const char* k : kKnown) ok = ok || key == k;
    if (!ok) {
      throw Error(ErrorCode::kParse, "planted config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

std::string PlantedConfig::to_json() const {
  json j = {{"nodes", nodes},
            {"elites", elites},
            {"dimension", dimension},
            {"components", components},
            {"centers", centers},
            {"center_range", center_range},
            {"spread", spread},
            {"beta", beta},
            {"elite_attractiveness", elite_attractiveness},
            {"mean_out_degree", mean_out_degree},
            {"seed", seed}};
  return j.dump(2);
}

PlantedGraph generate_planted(const PlantedConfig& config) {
  config.validate();
  const std::size_t n = config.nodes;
  const std::size_t dim = config.dimension;
  Rng rng(config.seed);

  std::vector<double> centers = config.centers;
  if (centers.empty()) {
    centers.resize(config.components * dim);
    for (double& x : centers) {
      x = config.center_range * (2.0 * rng.uniform() - 1.0);
    }
  }

  std::vector<double> features(n * dim);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = rng.below(config.components);
    for (std::size_t k = 0; k < dim; ++k) {
      features[v * dim + k] = centers[c * dim + k] + config.spread * rng.normal();
    }
  }

  std::vector<NodeId> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<NodeId>(v);
  rng.shuffle(std::span<NodeId>(order));
  std::vector<double> attractiveness(n, 1.0);
  NodeSet elites(order.begin(),
                 order.begin() + static_cast<std::ptrdiff_t>(config.elites));
  normalize(elites);
  for (const NodeId e : elites) attractiveness[e] = config.elite_attractiveness;

  std::vector<std::vector<NodeId>> out_edges(n);
  parallel_for(n, config.threads, [&](std::size_t u) {
    std::vector<double> p(n, 0.0);
    const double* fu = features.data() + u * dim;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      const double* fv = features.data() + v * dim;
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = fu[k] - fv[k];
        d2 += diff * diff;
      }
      p[v] = attractiveness[v] * std::exp(-config.beta * d2);
    }
    fill_probabilities(p, config.mean_out_degree);
    Rng local = Rng::stream(config.seed, u);
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      if (local.uniform() < p[v]) out_edges[u].push_back(static_cast<NodeId>(v));
    }
  });

  GraphBuilder builder;
  for (std::size_t v = 0; v < n; ++v) builder.add_node("n" + std::to_string(v));
  for (std::size_t u = 0; u < n; ++u) {
    for (const NodeId v : out_edges[u]) {
      builder.add_edge(static_cast<NodeId>(u), v);
    }
  }

  PlantedGraph out;
  out.graph = std::move(builder).build();
  out.truth = FeatureStore(n, dim);
  for (std::size_t v = 0; v < n; ++v) {
    out.truth.set_known(static_cast<NodeId>(v),
                        FeatureView(features.data() + v * dim, dim));
  }
  out.elites = std::move(elites);
  return out;
}

}  // namespace latentprop
