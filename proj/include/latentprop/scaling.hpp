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

#ifndef LATENTPROP_SCALING_HPP_
#define LATENTPROP_SCALING_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"

namespace latentprop {

// Sparse 0/1 follower x elite matrix. Each row lists the sorted column
// indices of the elites it follows.
struct BipartiteAdjacency {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::uint32_t>> rows;

  std::size_t row_count() const noexcept { return rows.size(); }
  std::size_t col_count() const noexcept { return col_labels.size(); }
  std::size_t nonzeros() const noexcept;
  Eigen::MatrixXd to_dense() const;
};

// Rows are every node following at least one elite (in id order, elites
// included); columns are the elites in the given order.
BipartiteAdjacency build_bipartite(const DirectedGraph& g,
                                   std::span<const NodeId> elites);

struct FilteredBipartite {
  BipartiteAdjacency matrix;
  // (duplicate row label, label of the kept row with the same pattern).
  std::vector<std::pair<std::string, std::string>> duplicates;
  std::size_t removed_low_degree = 0;
  std::size_t removed_columns = 0;
};

// Drops rows with fewer than `min_degree` ones, then rows repeating an
// earlier row's pattern, then columns left empty. Throws kEmpty if nothing
// remains and kInvalidArgument for min_degree < 1.
FilteredBipartite filter_bipartite(const BipartiteAdjacency& adj,
                                   int min_degree = 3);

enum class SvdMethod { kAuto, kDense, kLanczos };

struct ScalingOptions {
  SvdMethod method = SvdMethod::kAuto;
  // kAuto uses the dense solver when both sides are below this size.
  std::size_t dense_limit = 2000;
  // Relative residual required of every returned Lanczos singular triplet.
  double tolerance = 1e-10;
  std::uint64_t seed = 1;
  // Singular values at or below this are treated as zero.
  double rank_tolerance = 1e-9;
  // When false, dimensions beyond the achieved rank are returned as zeros
  // instead of raising RankDeficientError.
  bool require_rank = true;
};

struct ScalingResult {
  std::size_t dims = 0;
  std::size_t rank = 0;
  // rows x dims and cols x dims principal coordinates.
  Eigen::MatrixXd row_coords;
  Eigen::MatrixXd col_coords;
  // Every singular value the solver produced, non-increasing. The dense
  // solver returns all min(rows, cols) of them.
  std::vector<double> singular_values;
  // sigma_k^2 / total_inertia, aligned with singular_values.
  std::vector<double> inertia_fraction;
  double total_inertia = 0.0;
  Eigen::VectorXd row_masses;
  Eigen::VectorXd col_masses;
  SvdMethod method_used = SvdMethod::kDense;
};

// Correspondence analysis of a 0/1 table: SVD of the standardized residuals
// D_r^-1/2 (P - r c^T) D_c^-1/2 with rows and columns in principal
// coordinates. Each axis is oriented so that its largest-magnitude column
// coordinate is positive.
ScalingResult correspondence_analysis(const BipartiteAdjacency& adj,
                                      std::size_t n_dims,
                                      const ScalingOptions& options = {});

// Known features for each kept row and, through the duplicate map, for each
// row that was dropped as a duplicate.
FeatureStore seed_features_from_scaling(const ScalingResult& result,
                                        const FilteredBipartite& filtered,
                                        const DirectedGraph& g);

// CSV `label,f1,...,fN` of the elite coordinates.
void write_column_coordinates(std::ostream& out, const ScalingResult& result,
                              const BipartiteAdjacency& adj);

// JSON summary: sizes, filter counts, rank, singular values, inertia.
std::string scaling_report_json(const ScalingResult& result,
                                const FilteredBipartite& filtered);

// One elite label per line; blank and '#' lines skipped.
NodeSet load_node_list(std::istream& in, const DirectedGraph& g);
NodeSet load_node_list_file(const std::string& path, const DirectedGraph& g);

}  // namespace latentprop

#endif  // LATENTPROP_SCALING_HPP_
