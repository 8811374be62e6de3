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

#ifndef LATENTPROP_EVALUATION_HPP_
#define LATENTPROP_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latentprop/features.hpp"
#include "latentprop/graph.hpp"
#include "latentprop/propagation_state.hpp"

namespace latentprop {

// Round-robin sampler over a grid of `grid_bins` cells per axis spanning the
// bounding box of `nodes`. Each round visits the non-empty cells in a freshly
// shuffled order and draws one node uniformly from each, until `n` nodes are
// collected. Throws kInvalidArgument when n > |nodes|.
NodeSet spatial_uniform_sample(const FeatureStore& store,
                               std::span<const NodeId> nodes, std::size_t n,
                               std::size_t grid_bins, std::uint64_t seed);

struct ErrorStats {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Throws kEmpty on empty input.
ErrorStats summarize(std::span<const double> values);

// First Method A step from the seed set, one row per epsilon.
struct SweepRow {
  double epsilon = 0.0;
  std::size_t delta_size = 0;
  // Members of the delta with a truth value; errors are computed on these.
  std::size_t evaluated = 0;
  // Absent when no member of the delta has a truth value.
  std::optional<ErrorStats> error;
  // Same nodes predicted by the seed-set centroid.
  std::optional<double> centroid_error;
};

// One Method B step from A minus the test fold, restricted to the fold.
struct FoldRow {
  double epsilon = 0.0;
  std::size_t fold = 0;
  std::size_t test_size = 0;
  std::size_t recovered = 0;
  std::size_t pivot_count = 0;
  double coverage = 0.0;
  std::optional<double> error;
  std::optional<double> centroid_error;
};

struct FoldSummary {
  double epsilon = 0.0;
  std::optional<ErrorStats> error;
  ErrorStats coverage;
  ErrorStats recovered;
  ErrorStats pivot_count;
  std::size_t folds_with_error = 0;
};

struct EvaluationReport {
  std::string protocol;  // "sweep-a" or "kfold-b"
  Direction direction = Direction::kUp;
  double p = 2.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t seed_set_size = 0;
  std::vector<double> epsilons;
  std::vector<SweepRow> sweep;
  std::vector<FoldRow> folds;

  // Per-epsilon aggregation of the fold rows (kfold-b only), in grid order.
  std::vector<FoldSummary> fold_summaries() const;

  // Columns: epsilon,method,direction,fold,stat,error,size_delta_v,
  // size_pivots,coverage. Absent values are empty fields.
  void write_csv(std::ostream& out) const;
  std::string to_json() const;
};

extern const char* const kReportCsvHeader;

struct EvaluationOptions {
  NormOrder p;
  unsigned threads = 0;
  CandidateTest candidate_test = CandidateTest::kPivotFeatures;
};

// Method A first-step sweep. `truth` supplies the seed features and the
// ground truth for the evaluated nodes.
EvaluationReport sweep_method_a(const DirectedGraph& g, const FeatureStore& truth,
                                std::span<const NodeId> seed_set, Direction d,
                                std::span<const double> epsilons,
                                const EvaluationOptions& options = {});

// Method B K-fold cross-validation over the featured set A. Folds are
// contiguous blocks of a seeded shuffle of A. Throws kInvalidArgument for
// k < 2 and kEmpty when a fold would be empty.
EvaluationReport kfold_eval_method_b(const DirectedGraph& g,
                                     const FeatureStore& truth,
                                     std::span<const NodeId> seed_set,
                                     std::size_t k, Direction d,
                                     std::span<const double> epsilons,
                                     std::uint64_t seed,
                                     const EvaluationOptions& options = {});

std::vector<std::vector<NodeId>> kfold_partition(std::span<const NodeId> nodes,
                                                 std::size_t k,
                                                 std::uint64_t seed);

// Concatenates report CSVs after checking each carries the standard header.
void merge_report_csv(std::span<const std::string> paths, std::ostream& out);

struct ExternalCorrelation {
  std::string criterion;
  std::size_t dimension = 0;  // 0-based
  // Pearson correlation between each node's coordinate and its group score.
  double node_level = 0.0;
  // Pearson correlation between group mean coordinates and group scores.
  double group_level = 0.0;
  std::size_t groups = 0;
  std::size_t nodes = 0;
};

struct ExternalScores {
  std::vector<std::string> criteria;
  // group -> one value per criterion; NaN marks a missing value.
  std::map<std::string, std::vector<double>> values;
};

// Throws kInvalidArgument when fewer than 3 groups match and kUndefined when
// the scores or coordinates have zero variance.
std::vector<ExternalCorrelation> correlate_with_external(
    const FeatureStore& positions, const std::map<NodeId, std::string>& groups,
    const ExternalScores& scores);

// CSV `node_label,group`; unknown labels skipped.
std::map<NodeId, std::string> load_groups(std::istream& in,
                                          const DirectedGraph& g);
// CSV `group,criterion1,...`; empty cells are missing.
ExternalScores load_scores(std::istream& in);

double pearson_correlation(std::span<const double> x, std::span<const double> y);
// Ties share their average rank.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace latentprop

#endif  // LATENTPROP_EVALUATION_HPP_
