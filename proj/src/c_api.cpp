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

#include "latentprop/latentprop.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "latentprop/error.hpp"
#include "latentprop/evaluation.hpp"
#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"
#include "latentprop/method_a.hpp"
#include "latentprop/method_b.hpp"
#include "latentprop/scaling.hpp"
#include "latentprop/synthetic.hpp"

namespace lp = latentprop;

struct lprop_graph {
  lp::DirectedGraph graph;
};

struct lprop_features {
  lp::FeatureStore store;
};

struct lprop_scaling {
  const lp::DirectedGraph* graph;
  lp::FilteredBipartite filtered;
  lp::ScalingResult result;
};

struct lprop_propagation {
  const lp::DirectedGraph* graph;
  lp::PropagationState state;
  lprop_features estimates;
  bool method_b = false;
  std::vector<lp::PivotSet> pivots;
};

struct lprop_report {
  lp::EvaluationReport report;
};

namespace {

thread_local std::string g_last_error;

lprop_status fail(lprop_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
lprop_status guard(Body&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return LPROP_OK;
  } catch (const lp::Error& e) {
    return fail(static_cast<lprop_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LPROP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LPROP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LPROP_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) {
    throw lp::Error(lp::ErrorCode::kInvalidArgument,
                    std::string(name) + " must not be NULL");
  }
}

lp::Direction to_direction(lprop_direction d) {
  switch (d) {
    case LPROP_UP: return lp::Direction::kUp;
    case LPROP_DOWN: return lp::Direction::kDown;
  }
  throw lp::Error(lp::ErrorCode::kInvalidArgument, "invalid direction");
}

lp::CandidateTest to_test(lprop_candidate_test t) {
  switch (t) {
    case LPROP_TEST_PIVOT_FEATURES: return lp::CandidateTest::kPivotFeatures;
    case LPROP_TEST_CO_NEIGHBOR_FEATURES:
      return lp::CandidateTest::kCoNeighborFeatures;
  }
  throw lp::Error(lp::ErrorCode::kInvalidArgument, "invalid candidate test");
}

std::span<const lp::NodeId> ids(const uint32_t* nodes, size_t count) {
  if (count > 0) require(nodes, "nodes");
  return {nodes, count};
}

void check_nodes(const lp::DirectedGraph& g, std::span<const lp::NodeId> nodes) {
  for (const lp::NodeId v : nodes) {
    if (!g.contains(v)) {
      throw lp::Error(lp::ErrorCode::kNotFound,
                      "node id " + std::to_string(v) + " is not in the graph");
    }
  }
}

// Copies ids into a malloc'd buffer owned by the caller.
void export_ids(const lp::NodeSet& nodes, uint32_t** out, size_t* count) {
  require(out, "out");
  require(count, "count");
  *out = nullptr;
  *count = nodes.size();
  if (nodes.empty()) return;
  auto* buffer =
      static_cast<uint32_t*>(std::malloc(nodes.size() * sizeof(uint32_t)));
  if (buffer == nullptr) throw std::bad_alloc();
  std::memcpy(buffer, nodes.data(), nodes.size() * sizeof(uint32_t));
  *out = buffer;
}

std::ofstream open_out(const char* path) {
  require(path, "path");
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw lp::Error(lp::ErrorCode::kIo,
                    std::string("cannot open '") + path + "' for writing");
  }
  return out;
}

void close_out(std::ofstream& out, const char* path) {
  out.close();
  if (!out) {
    throw lp::Error(lp::ErrorCode::kIo,
                    std::string("failed writing '") + path + "'");
  }
}

}  // namespace

extern "C" {

const char* lprop_version(void) { return "0.1.0"; }

const char* lprop_last_error(void) { return g_last_error.c_str(); }

const char* lprop_status_name(lprop_status status) {
  switch (status) {
    case LPROP_OK: return "ok";
    case LPROP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LPROP_ERR_PARSE: return "parse error";
    case LPROP_ERR_IO: return "i/o error";
    case LPROP_ERR_NOT_FOUND: return "not found";
    case LPROP_ERR_EMPTY: return "empty input";
    case LPROP_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case LPROP_ERR_MISSING_FEATURE: return "missing feature";
    case LPROP_ERR_RANK_DEFICIENT: return "rank deficient";
    case LPROP_ERR_INFEASIBLE: return "infeasible";
    case LPROP_ERR_UNDEFINED: return "undefined";
    case LPROP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void lprop_free_ids(uint32_t* ids) { std::free(ids); }

// ---- graph ---------------------------------------------------------------

lprop_status lprop_graph_load(const char* path, char separator,
                              lprop_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    lp::EdgeListFormat format;
    format.separator = separator;
    auto g = std::make_unique<lprop_graph>();
    g->graph = lp::load_edge_list_file(path, format);
    *out = g.release();
  });
}

lprop_status lprop_graph_from_edges(const char* const* followers,
                                    const char* const* followees, size_t count,
                                    lprop_graph** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    if (count == 0) throw lp::Error(lp::ErrorCode::kEmpty, "no edges given");
    require(followers, "followers");
    require(followees, "followees");
    lp::GraphBuilder builder;
    for (size_t i = 0; i < count; ++i) {
      require(followers[i], "follower label");
      require(followees[i], "followee label");
      if (*followers[i] == '\0' || *followees[i] == '\0') {
        throw lp::Error(lp::ErrorCode::kInvalidArgument, "empty node label");
      }
      builder.add_edge(followers[i], followees[i]);
    }
    auto g = std::make_unique<lprop_graph>();
    g->graph = std::move(builder).build();
    *out = g.release();
  });
}

void lprop_graph_free(lprop_graph* graph) { delete graph; }

size_t lprop_graph_node_count(const lprop_graph* graph) {
  return graph ? graph->graph.node_count() : 0;
}

size_t lprop_graph_edge_count(const lprop_graph* graph) {
  return graph ? graph->graph.edge_count() : 0;
}

size_t lprop_graph_self_loops_dropped(const lprop_graph* graph) {
  return graph ? graph->graph.self_loops_dropped() : 0;
}

size_t lprop_graph_duplicates_collapsed(const lprop_graph* graph) {
  return graph ? graph->graph.duplicates_collapsed() : 0;
}

lprop_status lprop_graph_find(const lprop_graph* graph, const char* label,
                              uint32_t* id) {
  return guard([&] {
    require(graph, "graph");
    require(label, "label");
    require(id, "id");
    *id = graph->graph.id(label);
  });
}

const char* lprop_graph_label(const lprop_graph* graph, uint32_t id) {
  if (graph == nullptr || !graph->graph.contains(id)) return nullptr;
  return graph->graph.label(id).c_str();
}

lprop_status lprop_graph_neighbors(const lprop_graph* graph, uint32_t node,
                                   lprop_direction direction,
                                   const uint32_t** neighbors, size_t* count) {
  return guard([&] {
    require(graph, "graph");
    require(neighbors, "neighbors");
    require(count, "count");
    const auto span = graph->graph.neighbors(node, to_direction(direction));
    *neighbors = span.data();
    *count = span.size();
  });
}

lprop_status lprop_graph_neighborhood(const lprop_graph* graph,
                                      const uint32_t* nodes, size_t count,
                                      lprop_direction direction, uint32_t** out,
                                      size_t* out_count) {
  return guard([&] {
    require(graph, "graph");
    const auto set = ids(nodes, count);
    check_nodes(graph->graph, set);
    export_ids(lp::neighborhood_of_set(graph->graph, set, to_direction(direction)),
               out, out_count);
  });
}

lprop_status lprop_graph_write_edges(const lprop_graph* graph, const char* path,
                                     char separator) {
  return guard([&] {
    require(graph, "graph");
    auto out = open_out(path);
    lp::write_edge_list(out, graph->graph, separator);
    close_out(out, path);
  });
}

lprop_status lprop_graph_write_labels(const lprop_graph* graph,
                                      const char* path) {
  return guard([&] {
    require(graph, "graph");
    auto out = open_out(path);
    lp::write_label_map(out, graph->graph);
    close_out(out, path);
  });
}

lprop_status lprop_node_list_load(const lprop_graph* graph, const char* path,
                                  uint32_t** out, size_t* count) {
  return guard([&] {
    require(graph, "graph");
    require(path, "path");
    export_ids(lp::load_node_list_file(path, graph->graph), out, count);
  });
}

lprop_status lprop_node_list_write(const lprop_graph* graph,
                                   const uint32_t* nodes, size_t count,
                                   const char* path) {
  return guard([&] {
    require(graph, "graph");
    const auto set = ids(nodes, count);
    check_nodes(graph->graph, set);
    auto out = open_out(path);
    for (const lp::NodeId v : set) out << graph->graph.label(v) << '\n';
    close_out(out, path);
  });
}

// ---- features ------------------------------------------------------------

lprop_status lprop_features_create(const lprop_graph* graph, size_t dimension,
                                   lprop_features** out) {
  return guard([&] {
    require(graph, "graph");
    require(out, "out");
    *out = nullptr;
    auto f = std::make_unique<lprop_features>();
    f->store = lp::FeatureStore(graph->graph.node_count(), dimension);
    *out = f.release();
  });
}

lprop_status lprop_features_load(const lprop_graph* graph, const char* path,
                                 lprop_features** out, size_t* skipped) {
  return guard([&] {
    require(graph, "graph");
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto f = std::make_unique<lprop_features>();
    f->store = lp::load_features_file(path, graph->graph, skipped);
    *out = f.release();
  });
}

void lprop_features_free(lprop_features* features) { delete features; }

size_t lprop_features_dimension(const lprop_features* features) {
  return features ? features->store.dimension() : 0;
}

size_t lprop_features_count(const lprop_features* features) {
  return features ? features->store.size() : 0;
}

int lprop_features_has(const lprop_features* features, uint32_t node) {
  return features != nullptr && features->store.has(node) ? 1 : 0;
}

lprop_status lprop_features_provenance(const lprop_features* features,
                                       uint32_t node, int* kind, int* step) {
  return guard([&] {
    require(features, "features");
    require(kind, "kind");
    *kind = static_cast<int>(features->store.provenance(node));
    if (step != nullptr) *step = features->store.step(node);
  });
}

lprop_status lprop_features_set_known(lprop_features* features, uint32_t node,
                                      const double* values, size_t dimension) {
  return guard([&] {
    require(features, "features");
    require(values, "values");
    features->store.set_known(node, {values, dimension});
  });
}

lprop_status lprop_features_get(const lprop_features* features, uint32_t node,
                                double* values, size_t dimension) {
  return guard([&] {
    require(features, "features");
    require(values, "values");
    const auto f = features->store.feature(node);
    if (dimension != f.size()) {
      throw lp::Error(lp::ErrorCode::kDimensionMismatch,
                      "buffer holds " + std::to_string(dimension) +
                          " values, feature has " + std::to_string(f.size()));
    }
    std::copy(f.begin(), f.end(), values);
  });
}

lprop_status lprop_features_nodes(const lprop_features* features,
                                  uint32_t** out, size_t* count) {
  return guard([&] {
    require(features, "features");
    export_ids(features->store.nodes(), out, count);
  });
}

lprop_status lprop_features_write(const lprop_features* features,
                                  const lprop_graph* graph, const char* path,
                                  int with_provenance) {
  return guard([&] {
    require(features, "features");
    require(graph, "graph");
    auto out = open_out(path);
    lp::write_features(out, features->store, graph->graph, with_provenance != 0);
    close_out(out, path);
  });
}

// ---- metrics -------------------------------------------------------------

lprop_status lprop_estimation_error(const double* estimate, const double* truth,
                                    size_t dimension, double p, double* out) {
  return guard([&] {
    require(estimate, "estimate");
    require(truth, "truth");
    require(out, "out");
    *out = lp::estimation_error({estimate, dimension}, {truth, dimension},
                                lp::NormOrder(p));
  });
}

lprop_status lprop_incoherence(const lprop_features* features,
                               const uint32_t* nodes, size_t count, double p,
                               double* out) {
  return guard([&] {
    require(features, "features");
    require(out, "out");
    *out = lp::incoherence(ids(nodes, count), features->store, lp::NormOrder(p));
  });
}

lprop_status lprop_coherent_neighborhood(const lprop_graph* graph,
                                         const lprop_features* features,
                                         const uint32_t* nodes, size_t count,
                                         lprop_direction direction,
                                         double epsilon, double p,
                                         uint32_t** out, size_t* out_count) {
  return guard([&] {
    require(graph, "graph");
    require(features, "features");
    const auto set = ids(nodes, count);
    check_nodes(graph->graph, set);
    export_ids(lp::coherent_neighborhood(graph->graph, features->store, set,
                                         to_direction(direction), epsilon,
                                         lp::NormOrder(p)),
               out, out_count);
  });
}

// ---- synthetic -----------------------------------------------------------

lprop_status lprop_generate(const char* config_json, lprop_graph** graph,
                            lprop_features** truth, uint32_t** elites,
                            size_t* elite_count) {
  return guard([&] {
    require(config_json, "config_json");
    if (graph) *graph = nullptr;
    if (truth) *truth = nullptr;
    if (elites) *elites = nullptr;
    const auto config = lp::PlantedConfig::from_json(config_json);
    lp::PlantedGraph planted = lp::generate_planted(config);
    auto g = std::make_unique<lprop_graph>();
    auto f = std::make_unique<lprop_features>();
    g->graph = std::move(planted.graph);
    f->store = std::move(planted.truth);
    if (elites != nullptr) export_ids(planted.elites, elites, elite_count);
    if (graph) *graph = g.release();
    if (truth) *truth = f.release();
  });
}

// ---- scaling -------------------------------------------------------------

void lprop_scale_options_init(lprop_scale_options* options) {
  if (options == nullptr) return;
  options->min_degree = 3;
  options->dims = 2;
  options->svd = LPROP_SVD_AUTO;
  options->tolerance = 1e-10;
  options->seed = 1;
  options->require_rank = 1;
}

lprop_status lprop_scale(const lprop_graph* graph, const uint32_t* elites,
                         size_t elite_count, const lprop_scale_options* options,
                         lprop_scaling** out) {
  return guard([&] {
    require(graph, "graph");
    require(out, "out");
    *out = nullptr;
    lprop_scale_options opts;
    lprop_scale_options_init(&opts);
    if (options != nullptr) opts = *options;
    const auto set = ids(elites, elite_count);
    check_nodes(graph->graph, set);

    lp::ScalingOptions so;
    switch (opts.svd) {
      case LPROP_SVD_AUTO: so.method = lp::SvdMethod::kAuto; break;
      case LPROP_SVD_DENSE: so.method = lp::SvdMethod::kDense; break;
      case LPROP_SVD_LANCZOS: so.method = lp::SvdMethod::kLanczos; break;
      default:
        throw lp::Error(lp::ErrorCode::kInvalidArgument, "invalid svd method");
    }
    so.tolerance = opts.tolerance;
    so.seed = opts.seed;
    so.require_rank = opts.require_rank != 0;

    auto s = std::make_unique<lprop_scaling>();
    s->graph = &graph->graph;
    s->filtered = lp::filter_bipartite(lp::build_bipartite(graph->graph, set),
                                       opts.min_degree);
    s->result = lp::correspondence_analysis(s->filtered.matrix, opts.dims, so);
    *out = s.release();
  });
}

void lprop_scaling_free(lprop_scaling* scaling) { delete scaling; }

size_t lprop_scaling_rank(const lprop_scaling* scaling) {
  return scaling ? scaling->result.rank : 0;
}

size_t lprop_scaling_row_count(const lprop_scaling* scaling) {
  return scaling ? scaling->filtered.matrix.row_count() : 0;
}

size_t lprop_scaling_col_count(const lprop_scaling* scaling) {
  return scaling ? scaling->filtered.matrix.col_count() : 0;
}

lprop_status lprop_scaling_inertia(const lprop_scaling* scaling, size_t dim,
                                   double* singular_value, double* fraction) {
  return guard([&] {
    require(scaling, "scaling");
    if (dim >= scaling->result.singular_values.size()) {
      throw lp::Error(lp::ErrorCode::kNotFound, "dimension out of range");
    }
    if (singular_value) *singular_value = scaling->result.singular_values[dim];
    if (fraction) *fraction = scaling->result.inertia_fraction[dim];
  });
}

lprop_status lprop_scaling_seed_features(const lprop_scaling* scaling,
                                         lprop_features** out) {
  return guard([&] {
    require(scaling, "scaling");
    require(out, "out");
    *out = nullptr;
    auto f = std::make_unique<lprop_features>();
    f->store = lp::seed_features_from_scaling(scaling->result, scaling->filtered,
                                              *scaling->graph);
    *out = f.release();
  });
}

lprop_status lprop_scaling_write_rows(const lprop_scaling* scaling,
                                      const char* path) {
  return guard([&] {
    require(scaling, "scaling");
    const auto store = lp::seed_features_from_scaling(
        scaling->result, scaling->filtered, *scaling->graph);
    auto out = open_out(path);
    lp::write_features(out, store, *scaling->graph);
    close_out(out, path);
  });
}

lprop_status lprop_scaling_write_cols(const lprop_scaling* scaling,
                                      const char* path) {
  return guard([&] {
    require(scaling, "scaling");
    auto out = open_out(path);
    lp::write_column_coordinates(out, scaling->result, scaling->filtered.matrix);
    close_out(out, path);
  });
}

lprop_status lprop_scaling_write_report(const lprop_scaling* scaling,
                                        const char* path) {
  return guard([&] {
    require(scaling, "scaling");
    auto out = open_out(path);
    out << lp::scaling_report_json(scaling->result, scaling->filtered) << '\n';
    close_out(out, path);
  });
}

// ---- propagation ---------------------------------------------------------

void lprop_propagate_options_init(lprop_propagate_options* options) {
  if (options == nullptr) return;
  options->method = LPROP_METHOD_A;
  options->direction = LPROP_UP;
  options->epsilon = 0.1;
  options->max_steps = 1;
  options->p = 2.0;
  options->candidate_test = LPROP_TEST_PIVOT_FEATURES;
}

lprop_status lprop_propagate(const lprop_graph* graph,
                             const lprop_features* known, const uint32_t* seed,
                             size_t seed_count,
                             const lprop_propagate_options* options,
                             lprop_propagation** out) {
  return guard([&] {
    require(graph, "graph");
    require(known, "known");
    require(out, "out");
    *out = nullptr;
    lprop_propagate_options opts;
    lprop_propagate_options_init(&opts);
    if (options != nullptr) opts = *options;

    lp::NodeSet seed_set;
    if (seed == nullptr) {
      for (const lp::NodeId v : known->store.nodes()) {
        if (known->store.provenance(v) == lp::Provenance::kKnown) {
          seed_set.push_back(v);
        }
      }
    } else {
      seed_set.assign(seed, seed + seed_count);
      check_nodes(graph->graph, seed_set);
    }

    lp::PropagationParams params;
    params.direction = to_direction(opts.direction);
    params.epsilon = opts.epsilon;
    params.p = lp::NormOrder(opts.p);
    params.candidate_test = to_test(opts.candidate_test);

    auto r = std::make_unique<lprop_propagation>();
    r->graph = &graph->graph;
    switch (opts.method) {
      case LPROP_METHOD_A:
        r->state = lp::run_method_a(graph->graph, known->store, seed_set, params,
                                    opts.max_steps);
        break;
      case LPROP_METHOD_B:
        r->method_b = true;
        r->state = lp::run_method_b(graph->graph, known->store, seed_set, params,
                                    opts.max_steps, &r->pivots);
        break;
      default:
        throw lp::Error(lp::ErrorCode::kInvalidArgument, "invalid method");
    }
    r->estimates.store = r->state.estimates();
    *out = r.release();
  });
}

void lprop_propagation_free(lprop_propagation* result) { delete result; }

const lprop_features* lprop_propagation_estimates(
    const lprop_propagation* result) {
  return result ? &result->estimates : nullptr;
}

size_t lprop_propagation_steps(const lprop_propagation* result) {
  return result ? result->state.log().size() : 0;
}

lprop_status lprop_propagation_step_log(const lprop_propagation* result,
                                        size_t step, size_t* added,
                                        size_t* rejected, long* pivots) {
  return guard([&] {
    require(result, "result");
    const auto& log = result->state.log();
    if (step >= log.size()) {
      throw lp::Error(lp::ErrorCode::kNotFound, "step out of range");
    }
    if (added) *added = log[step].added;
    if (rejected) *rejected = log[step].rejected;
    if (pivots) {
      *pivots = log[step].pivots ? static_cast<long>(*log[step].pivots) : -1;
    }
  });
}

lprop_status lprop_propagation_sets(const lprop_propagation* result,
                                    uint32_t** coherent, size_t* coherent_count,
                                    uint32_t** incoherent,
                                    size_t* incoherent_count) {
  return guard([&] {
    require(result, "result");
    if (coherent) export_ids(result->state.coherent(), coherent, coherent_count);
    if (incoherent) {
      export_ids(result->state.incoherent(), incoherent, incoherent_count);
    }
  });
}

lprop_status lprop_propagation_write_log(const lprop_propagation* result,
                                         const char* path) {
  return guard([&] {
    require(result, "result");
    auto out = open_out(path);
    out << "step,size_delta_v,size_delta_v_bar,size_pivots\n";
    for (const auto& entry : result->state.log()) {
      out << entry.step << ',' << entry.added << ',' << entry.rejected << ',';
      if (entry.pivots) out << *entry.pivots;
      out << '\n';
    }
    close_out(out, path);
  });
}

lprop_status lprop_propagation_write_pivots(const lprop_propagation* result,
                                            const char* path) {
  return guard([&] {
    require(result, "result");
    if (!result->method_b) {
      throw lp::Error(lp::ErrorCode::kInvalidArgument,
                      "pivots exist only for Method B");
    }
    const std::size_t dim = result->state.estimates().dimension();
    auto out = open_out(path);
    out << "step,node_label";
    for (std::size_t k = 1; k <= dim; ++k) out << ",f" << k;
    out << '\n';
    for (const lp::PivotSet& pivots : result->pivots) {
      for (std::size_t i = 0; i < pivots.nodes.size(); ++i) {
        out << pivots.step << ',' << result->graph->label(pivots.nodes[i]);
        for (const double x : pivots.feature(i)) {
          out << ',' << lp::format_double(x);
        }
        out << '\n';
      }
    }
    close_out(out, path);
  });
}

// ---- evaluation ----------------------------------------------------------

void lprop_evaluate_options_init(lprop_evaluate_options* options) {
  if (options == nullptr) return;
  options->protocol = LPROP_PROTOCOL_SWEEP_A;
  options->direction = LPROP_UP;
  options->epsilons = nullptr;
  options->epsilon_count = 0;
  options->k = 20;
  options->p = 2.0;
  options->seed = 1;
  options->threads = 0;
  options->candidate_test = LPROP_TEST_PIVOT_FEATURES;
}

lprop_status lprop_sample_spatial(const lprop_features* features,
                                  const uint32_t* nodes, size_t node_count,
                                  size_t n, size_t grid_bins, uint64_t seed,
                                  uint32_t** out, size_t* count) {
  return guard([&] {
    require(features, "features");
    lp::NodeSet pool = nodes == nullptr ? features->store.nodes()
                                        : lp::NodeSet(nodes, nodes + node_count);
    export_ids(lp::spatial_uniform_sample(features->store, pool, n, grid_bins,
                                          seed),
               out, count);
  });
}

lprop_status lprop_evaluate(const lprop_graph* graph,
                            const lprop_features* truth, const uint32_t* set,
                            size_t set_count,
                            const lprop_evaluate_options* options,
                            lprop_report** out) {
  return guard([&] {
    require(graph, "graph");
    require(truth, "truth");
    require(options, "options");
    require(out, "out");
    *out = nullptr;
    const auto nodes = ids(set, set_count);
    check_nodes(graph->graph, nodes);
    if (options->epsilon_count > 0) require(options->epsilons, "epsilons");
    const std::span<const double> grid(options->epsilons,
                                       options->epsilon_count);
    lp::EvaluationOptions eo;
    eo.p = lp::NormOrder(options->p);
    eo.threads = options->threads;
    eo.candidate_test = to_test(options->candidate_test);
    const lp::Direction d = to_direction(options->direction);

    auto r = std::make_unique<lprop_report>();
    switch (options->protocol) {
      case LPROP_PROTOCOL_SWEEP_A:
        r->report = lp::sweep_method_a(graph->graph, truth->store, nodes, d, grid,
                                       eo);
        break;
      case LPROP_PROTOCOL_KFOLD_B:
        r->report = lp::kfold_eval_method_b(graph->graph, truth->store, nodes,
                                            options->k, d, grid, options->seed,
                                            eo);
        break;
      default:
        throw lp::Error(lp::ErrorCode::kInvalidArgument, "invalid protocol");
    }
    *out = r.release();
  });
}

void lprop_report_free(lprop_report* report) { delete report; }

lprop_status lprop_report_write_csv(const lprop_report* report,
                                    const char* path) {
  return guard([&] {
    require(report, "report");
    auto out = open_out(path);
    report->report.write_csv(out);
    close_out(out, path);
  });
}

lprop_status lprop_report_write_json(const lprop_report* report,
                                     const char* path) {
  return guard([&] {
    require(report, "report");
    auto out = open_out(path);
    out << report->report.to_json() << '\n';
    close_out(out, path);
  });
}

lprop_status lprop_report_merge(const char* const* paths, size_t count,
                                const char* out_path) {
  return guard([&] {
    if (count > 0) require(paths, "paths");
    std::vector<std::string> inputs;
    for (size_t i = 0; i < count; ++i) {
      require(paths[i], "path");
      inputs.emplace_back(paths[i]);
    }
    auto out = open_out(out_path);
    lp::merge_report_csv(inputs, out);
    close_out(out, out_path);
  });
}

lprop_status lprop_correlate(const lprop_graph* graph,
                             const lprop_features* positions,
                             const char* groups_path, const char* scores_path,
                             const char* out_path) {
  return guard([&] {
    require(graph, "graph");
    require(positions, "positions");
    require(groups_path, "groups_path");
    require(scores_path, "scores_path");
    std::ifstream groups_in(groups_path);
    if (!groups_in) {
      throw lp::Error(lp::ErrorCode::kIo,
                      std::string("cannot open '") + groups_path + "'");
    }
    std::ifstream scores_in(scores_path);
    if (!scores_in) {
      throw lp::Error(lp::ErrorCode::kIo,
                      std::string("cannot open '") + scores_path + "'");
    }
    const auto groups = lp::load_groups(groups_in, graph->graph);
    const auto scores = lp::load_scores(scores_in);
    const auto rows = lp::correlate_with_external(positions->store, groups, scores);
    auto out = open_out(out_path);
    out << "criterion,dimension,node_level,group_level,groups,nodes\n";
    for (const auto& r : rows) {
      out << r.criterion << ',' << r.dimension + 1 << ','
          << lp::format_double(r.node_level) << ','
          << lp::format_double(r.group_level) << ',' << r.groups << ','
          << r.nodes << '\n';
    }
    close_out(out, out_path);
  });
}

}  // extern "C"
