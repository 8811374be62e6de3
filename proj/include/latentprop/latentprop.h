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

/*
 * C interface to latentprop. All objects are opaque handles owned by the
 * caller and released with the matching *_free function. Functions return
 * an lprop_status; on failure lprop_last_error() describes the problem for
 * the calling thread. Node ids are the dense ids assigned when the graph was
 * built (0 .. node_count - 1). Id arrays returned through uint32_t** are
 * released with lprop_free_ids().
 */

#ifndef LATENTPROP_H_
#define LATENTPROP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LPROP_BUILDING_LIBRARY)
#    define LPROP_API __declspec(dllexport)
#  else
#    define LPROP_API __declspec(dllimport)
#  endif
#else
#  define LPROP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lprop_status {
  LPROP_OK = 0,
  LPROP_ERR_INVALID_ARGUMENT = 1,
  LPROP_ERR_PARSE = 2,
  LPROP_ERR_IO = 3,
  LPROP_ERR_NOT_FOUND = 4,
  LPROP_ERR_EMPTY = 5,
  LPROP_ERR_DIMENSION_MISMATCH = 6,
  LPROP_ERR_MISSING_FEATURE = 7,
  LPROP_ERR_RANK_DEFICIENT = 8,
  LPROP_ERR_INFEASIBLE = 9,
  LPROP_ERR_UNDEFINED = 10,
  LPROP_ERR_INTERNAL = 11
} lprop_status;

typedef enum lprop_direction { LPROP_UP = 0, LPROP_DOWN = 1 } lprop_direction;

typedef enum lprop_method { LPROP_METHOD_A = 0, LPROP_METHOD_B = 1 } lprop_method;

typedef enum lprop_candidate_test {
  LPROP_TEST_PIVOT_FEATURES = 0,
  LPROP_TEST_CO_NEIGHBOR_FEATURES = 1
} lprop_candidate_test;

typedef enum lprop_svd_method {
  LPROP_SVD_AUTO = 0,
  LPROP_SVD_DENSE = 1,
  LPROP_SVD_LANCZOS = 2
} lprop_svd_method;

typedef enum lprop_protocol {
  LPROP_PROTOCOL_SWEEP_A = 0,
  LPROP_PROTOCOL_KFOLD_B = 1
} lprop_protocol;

typedef struct lprop_graph lprop_graph;
typedef struct lprop_features lprop_features;
typedef struct lprop_scaling lprop_scaling;
typedef struct lprop_propagation lprop_propagation;
typedef struct lprop_report lprop_report;

LPROP_API const char* lprop_version(void);
LPROP_API const char* lprop_last_error(void);
LPROP_API const char* lprop_status_name(lprop_status status);
LPROP_API void lprop_free_ids(uint32_t* ids);

/* ---- graph ---------------------------------------------------------- */

/* Edge list `follower<sep>followee`, '#' comments. */
LPROP_API lprop_status lprop_graph_load(const char* path, char separator,
                                        lprop_graph** out);
LPROP_API lprop_status lprop_graph_from_edges(const char* const* followers,
                                              const char* const* followees,
                                              size_t count, lprop_graph** out);
LPROP_API void lprop_graph_free(lprop_graph* graph);
LPROP_API size_t lprop_graph_node_count(const lprop_graph* graph);
LPROP_API size_t lprop_graph_edge_count(const lprop_graph* graph);
LPROP_API size_t lprop_graph_self_loops_dropped(const lprop_graph* graph);
LPROP_API size_t lprop_graph_duplicates_collapsed(const lprop_graph* graph);
LPROP_API lprop_status lprop_graph_find(const lprop_graph* graph,
                                        const char* label, uint32_t* id);
/* NULL for ids outside the graph. Valid while the graph lives. */
LPROP_API const char* lprop_graph_label(const lprop_graph* graph, uint32_t id);
/* Borrowed, sorted view valid while the graph lives. */
LPROP_API lprop_status lprop_graph_neighbors(const lprop_graph* graph,
                                             uint32_t node,
                                             lprop_direction direction,
                                             const uint32_t** neighbors,
                                             size_t* count);
LPROP_API lprop_status lprop_graph_neighborhood(const lprop_graph* graph,
                                                const uint32_t* nodes,
                                                size_t count,
                                                lprop_direction direction,
                                                uint32_t** out,
                                                size_t* out_count);
LPROP_API lprop_status lprop_graph_write_edges(const lprop_graph* graph,
                                               const char* path,
                                               char separator);
/* CSV `label,node_id`. */
LPROP_API lprop_status lprop_graph_write_labels(const lprop_graph* graph,
                                                const char* path);
/* One label per line. */
LPROP_API lprop_status lprop_node_list_load(const lprop_graph* graph,
                                            const char* path, uint32_t** out,
                                            size_t* count);
LPROP_API lprop_status lprop_node_list_write(const lprop_graph* graph,
                                             const uint32_t* nodes,
                                             size_t count, const char* path);

/* ---- features ------------------------------------------------------- */

LPROP_API lprop_status lprop_features_create(const lprop_graph* graph,
                                             size_t dimension,
                                             lprop_features** out);
/* CSV `node_label,f1,...,fN`; rows for unknown labels are skipped and
 * counted in *skipped (may be NULL). */
LPROP_API lprop_status lprop_features_load(const lprop_graph* graph,
                                           const char* path,
                                           lprop_features** out,
                                           size_t* skipped);
LPROP_API void lprop_features_free(lprop_features* features);
LPROP_API size_t lprop_features_dimension(const lprop_features* features);
LPROP_API size_t lprop_features_count(const lprop_features* features);
LPROP_API int lprop_features_has(const lprop_features* features, uint32_t node);
/* 0 = absent, 1 = known, 2 = estimated; *step is -1 unless estimated. */
LPROP_API lprop_status lprop_features_provenance(const lprop_features* features,
                                                 uint32_t node, int* kind,
                                                 int* step);
LPROP_API lprop_status lprop_features_set_known(lprop_features* features,
                                                uint32_t node,
                                                const double* values,
                                                size_t dimension);
LPROP_API lprop_status lprop_features_get(const lprop_features* features,
                                          uint32_t node, double* values,
                                          size_t dimension);
LPROP_API lprop_status lprop_features_nodes(const lprop_features* features,
                                            uint32_t** out, size_t* count);
LPROP_API lprop_status lprop_features_write(const lprop_features* features,
                                            const lprop_graph* graph,
                                            const char* path,
                                            int with_provenance);

/* ---- metrics -------------------------------------------------------- */

LPROP_API lprop_status lprop_estimation_error(const double* estimate,
                                              const double* truth,
                                              size_t dimension, double p,
                                              double* out);
LPROP_API lprop_status lprop_incoherence(const lprop_features* features,
                                         const uint32_t* nodes, size_t count,
                                         double p, double* out);
LPROP_API lprop_status lprop_coherent_neighborhood(
    const lprop_graph* graph, const lprop_features* features,
    const uint32_t* nodes, size_t count, lprop_direction direction,
    double epsilon, double p, uint32_t** out, size_t* out_count);

/* ---- synthetic graphs ----------------------------------------------- */

/* `config_json` holds a planted-model configuration object. Any output
 * pointer may be NULL. */
LPROP_API lprop_status lprop_generate(const char* config_json,
                                      lprop_graph** graph,
                                      lprop_features** truth,
                                      uint32_t** elites, size_t* elite_count);

/* ---- scaling -------------------------------------------------------- */

typedef struct lprop_scale_options {
  int min_degree;          /* default 3 */
  size_t dims;             /* default 2 */
  lprop_svd_method svd;    /* default LPROP_SVD_AUTO */
  double tolerance;        /* default 1e-10 */
  uint64_t seed;           /* default 1 */
  int require_rank;        /* default 1 */
} lprop_scale_options;

LPROP_API void lprop_scale_options_init(lprop_scale_options* options);
LPROP_API lprop_status lprop_scale(const lprop_graph* graph,
                                   const uint32_t* elites, size_t elite_count,
                                   const lprop_scale_options* options,
                                   lprop_scaling** out);
LPROP_API void lprop_scaling_free(lprop_scaling* scaling);
LPROP_API size_t lprop_scaling_rank(const lprop_scaling* scaling);
LPROP_API size_t lprop_scaling_row_count(const lprop_scaling* scaling);
LPROP_API size_t lprop_scaling_col_count(const lprop_scaling* scaling);
LPROP_API lprop_status lprop_scaling_inertia(const lprop_scaling* scaling,
                                             size_t dim, double* singular_value,
                                             double* fraction);
/* Known features for every kept and duplicate follower row. */
LPROP_API lprop_status lprop_scaling_seed_features(const lprop_scaling* scaling,
                                                   lprop_features** out);
LPROP_API lprop_status lprop_scaling_write_rows(const lprop_scaling* scaling,
                                                const char* path);
LPROP_API lprop_status lprop_scaling_write_cols(const lprop_scaling* scaling,
                                                const char* path);
LPROP_API lprop_status lprop_scaling_write_report(const lprop_scaling* scaling,
                                                  const char* path);

/* ---- propagation ---------------------------------------------------- */

typedef struct lprop_propagate_options {
  lprop_method method;                 /* default LPROP_METHOD_A */
  lprop_direction direction;           /* default LPROP_UP */
  double epsilon;                      /* default 0.1 */
  int max_steps;                       /* default 1 */
  double p;                            /* default 2 */
  lprop_candidate_test candidate_test; /* default pivot features */
} lprop_propagate_options;

LPROP_API void lprop_propagate_options_init(lprop_propagate_options* options);
/* `seed` may be NULL, in which case every node with a known feature seeds
 * the propagation. */
LPROP_API lprop_status lprop_propagate(const lprop_graph* graph,
                                       const lprop_features* known,
                                       const uint32_t* seed, size_t seed_count,
                                       const lprop_propagate_options* options,
                                       lprop_propagation** out);
LPROP_API void lprop_propagation_free(lprop_propagation* result);
/* Borrowed; valid while the result lives. */
LPROP_API const lprop_features* lprop_propagation_estimates(
    const lprop_propagation* result);
LPROP_API size_t lprop_propagation_steps(const lprop_propagation* result);
/* *pivots is -1 for Method A. */
LPROP_API lprop_status lprop_propagation_step_log(
    const lprop_propagation* result, size_t step, size_t* added,
    size_t* rejected, long* pivots);
LPROP_API lprop_status lprop_propagation_sets(const lprop_propagation* result,
                                              uint32_t** coherent,
                                              size_t* coherent_count,
                                              uint32_t** incoherent,
                                              size_t* incoherent_count);
/* CSV `step,size_delta_v,size_delta_v_bar,size_pivots`. */
LPROP_API lprop_status lprop_propagation_write_log(
    const lprop_propagation* result, const char* path);
/* CSV `step,node_label,f1..fN` of Method B pivots with their provisional
 * features. */
LPROP_API lprop_status lprop_propagation_write_pivots(
    const lprop_propagation* result, const char* path);

/* ---- evaluation ----------------------------------------------------- */

typedef struct lprop_evaluate_options {
  lprop_protocol protocol;
  lprop_direction direction;
  const double* epsilons;
  size_t epsilon_count;
  size_t k;                            /* default 20 */
  double p;                            /* default 2 */
  uint64_t seed;                       /* default 1 */
  unsigned threads;                    /* 0 = all cores */
  lprop_candidate_test candidate_test;
} lprop_evaluate_options;

LPROP_API void lprop_evaluate_options_init(lprop_evaluate_options* options);

/* Grid-stratified sample of `n` featured nodes. `nodes` may be NULL to
 * draw from every featured node. */
LPROP_API lprop_status lprop_sample_spatial(const lprop_features* features,
                                            const uint32_t* nodes,
                                            size_t node_count, size_t n,
                                            size_t grid_bins, uint64_t seed,
                                            uint32_t** out, size_t* count);
LPROP_API lprop_status lprop_evaluate(const lprop_graph* graph,
                                      const lprop_features* truth,
                                      const uint32_t* set, size_t set_count,
                                      const lprop_evaluate_options* options,
                                      lprop_report** out);
LPROP_API void lprop_report_free(lprop_report* report);
LPROP_API lprop_status lprop_report_write_csv(const lprop_report* report,
                                              const char* path);
LPROP_API lprop_status lprop_report_write_json(const lprop_report* report,
                                               const char* path);
LPROP_API lprop_status lprop_report_merge(const char* const* paths,
                                          size_t count, const char* out_path);

/* CSV `criterion,dimension,node_level,group_level,groups,nodes`. Groups
 * file: `node_label,group`; scores file: `group,criterion1,...`. */
LPROP_API lprop_status lprop_correlate(const lprop_graph* graph,
                                       const lprop_features* positions,
                                       const char* groups_path,
                                       const char* scores_path,
                                       const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* LATENTPROP_H_ */
