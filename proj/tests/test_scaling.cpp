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

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ca_oracle.hpp"
#include "latentprop/error.hpp"
#include "latentprop/scaling.hpp"
#include "test_support.hpp"

namespace latentprop {
namespace {

using testing::abs_correlation;
using testing::ca_oracle;
using testing::from_dense;

TEST(FilterBipartite, MinDegreeRemovesLightRows) {
  Eigen::MatrixXd m(3, 4);
  m << 1, 1, 0, 0,
       1, 1, 1, 0,
       0, 1, 1, 1;
  const FilteredBipartite f = filter_bipartite(from_dense(m), 3);
  EXPECT_EQ(f.matrix.row_labels, (std::vector<std::string>{"r1", "r2"}));
  EXPECT_EQ(f.removed_low_degree, 1u);
}

TEST(FilterBipartite, DuplicateRowsKeepFirst) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 1, 1,
       1, 1, 0,
       1, 1, 1;
  const FilteredBipartite f = filter_bipartite(from_dense(m), 1);
  EXPECT_EQ(f.matrix.row_labels, (std::vector<std::string>{"r0", "r1"}));
  ASSERT_EQ(f.duplicates.size(), 1u);
  EXPECT_EQ(f.duplicates[0], (std::pair<std::string, std::string>{"r2", "r0"}));
}

TEST(FilterBipartite, EmptiedColumnsAreDropped) {
  Eigen::MatrixXd m(3, 5);
  m << 1, 1, 1, 0, 0,
       0, 1, 1, 1, 0,
       0, 0, 0, 0, 1;
  const FilteredBipartite f = filter_bipartite(from_dense(m), 3);
  EXPECT_EQ(f.matrix.col_labels, (std::vector<std::string>{"c0", "c1", "c2", "c3"}));
  EXPECT_EQ(f.removed_columns, 1u);
  EXPECT_EQ(f.matrix.rows[0], (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(FilterBipartite, CleanMatrixIsUnchangedAndIdempotent) {
  Eigen::MatrixXd m(3, 4);
  m << 1, 1, 1, 0,
       0, 1, 1, 1,
       1, 0, 1, 1;
  const BipartiteAdjacency adj = from_dense(m);
  const FilteredBipartite f = filter_bipartite(adj, 3);
  EXPECT_EQ(f.matrix.rows, adj.rows);
  EXPECT_EQ(f.matrix.col_labels, adj.col_labels);
  EXPECT_TRUE(f.duplicates.empty());
  const FilteredBipartite g = filter_bipartite(f.matrix, 3);
  EXPECT_EQ(g.matrix.rows, f.matrix.rows);
}

TEST(FilterBipartite, Errors) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, 1;
  try {
    filter_bipartite(from_dense(m), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmpty);
  }
  try {
    filter_bipartite(from_dense(m), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(BuildBipartite, RowsAreFollowersOfElites) {
  const DirectedGraph g = testing::make_graph(
      {{"u", "e1"}, {"u", "e2"}, {"w", "e2"}, {"w", "x"}, {"x", "u"}, {"e1", "e2"}});
  const BipartiteAdjacency adj = build_bipartite(g, make_node_set({g.id("e1"), g.id("e2")}));
  EXPECT_EQ(adj.col_labels, (std::vector<std::string>{"e1", "e2"}));
  EXPECT_EQ(adj.row_labels, (std::vector<std::string>{"u", "e1", "w"}));
  EXPECT_EQ(adj.rows[0], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(adj.rows[1], (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(adj.nonzeros(), 4u);
}

TEST(CorrespondenceAnalysis, MatchesOracleOnSmallDenseMatrix) {
  Eigen::MatrixXd m(5, 4);
  m << 1, 1, 0, 0,
       0, 1, 1, 0,
       1, 0, 1, 1,
       0, 0, 0, 1,
       1, 1, 1, 0;
  const ScalingResult r = correspondence_analysis(from_dense(m), 2);
  const testing::CaOracle o = ca_oracle(m);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(r.singular_values[k], o.singular_values(k), 1e-12);
    EXPECT_GE(abs_correlation(r.row_coords.col(k), o.rows.col(k)), 1 - 1e-9);
    EXPECT_GE(abs_correlation(r.col_coords.col(k), o.cols.col(k)), 1 - 1e-9);
    // Principal coordinates agree up to sign, not only up to scale.
    const double sign = r.col_coords.col(k).dot(o.cols.col(k)) >= 0 ? 1.0 : -1.0;
    EXPECT_LE((r.row_coords.col(k) - sign * o.rows.col(k)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((r.col_coords.col(k) - sign * o.cols.col(k)).cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_NEAR(r.total_inertia, o.total_inertia, 1e-12);
}

TEST(CorrespondenceAnalysis, RandomMatricesAgainstOracle) {
  std::mt19937_64 rng(314);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index rows = 6 + static_cast<Eigen::Index>(rng() % 25);
    const Eigen::Index cols = 4 + static_cast<Eigen::Index>(rng() % 7);
    const Eigen::MatrixXd m = testing::random_binary(rng, rows, cols, 0.45);
    const testing::CaOracle o = ca_oracle(m);
    if (o.singular_values(2) < 1e-6 ||
        o.singular_values(0) - o.singular_values(1) < 1e-6 ||
        o.singular_values(1) - o.singular_values(2) < 1e-6) {
      continue;
    }
    ++checked;
    const ScalingResult r = correspondence_analysis(from_dense(m), 2);
    for (int k = 0; k < 2; ++k) {
      EXPECT_GE(abs_correlation(r.row_coords.col(k), o.rows.col(k)), 1 - 1e-9);
      EXPECT_GE(abs_correlation(r.col_coords.col(k), o.cols.col(k)), 1 - 1e-9);
    }
    const double frac = std::accumulate(r.inertia_fraction.begin(),
                                        r.inertia_fraction.end(), 0.0);
    EXPECT_NEAR(frac, 1.0, 1e-9);
    EXPECT_NEAR(r.row_masses.sum(), 1.0, 1e-12);
    EXPECT_NEAR(r.col_masses.sum(), 1.0, 1e-12);
    EXPECT_GT(r.row_masses.minCoeff(), 0.0);
    for (std::size_t k = 1; k < r.singular_values.size(); ++k) {
      EXPECT_LE(r.singular_values[k], r.singular_values[k - 1] + 1e-12);
    }
  }
  EXPECT_GE(checked, 15);
}

TEST(CorrespondenceAnalysis, BlockDiagonalSeparatesCommunities) {
  Eigen::MatrixXd m(6, 4);
  m << 1, 1, 0, 0,
       1, 1, 0, 0,
       1, 0, 0, 0,
       0, 0, 1, 1,
       0, 0, 1, 1,
       0, 0, 0, 1;
  ScalingOptions opts;
  opts.require_rank = false;
  const ScalingResult r = correspondence_analysis(from_dense(m), 1, opts);
  for (int i = 0; i < 3; ++i) {
    EXPECT_GT(r.row_coords(i, 0) * r.row_coords(0, 0), 0.0);
    EXPECT_LT(r.row_coords(i + 3, 0) * r.row_coords(0, 0), 0.0);
  }
}

TEST(CorrespondenceAnalysis, IdenticalProfilesHaveRankZero) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 3);
  try {
    correspondence_analysis(from_dense(m), 2);
    FAIL();
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.achieved_rank(), 0u);
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
  ScalingOptions opts;
  opts.require_rank = false;
  const ScalingResult r = correspondence_analysis(from_dense(m), 2, opts);
  EXPECT_EQ(r.rank, 0u);
  EXPECT_EQ(r.row_coords.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.col_coords.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CorrespondenceAnalysis, RowPermutationEquivariance) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd m = testing::random_binary(rng, 20, 6, 0.5);
  std::vector<int> perm(20);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd pm(20, 6);
  for (int i = 0; i < 20; ++i) pm.row(i) = m.row(perm[i]);
  const ScalingResult a = correspondence_analysis(from_dense(m), 2);
  const ScalingResult b = correspondence_analysis(from_dense(pm), 2);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 20; ++i) {
      EXPECT_NEAR(b.row_coords(i, k), a.row_coords(perm[i], k), 1e-9);
    }
  }
}

TEST(CorrespondenceAnalysis, LanczosAgreesWithDense) {
  std::mt19937_64 rng(55);
  const Eigen::MatrixXd m = testing::random_binary(rng, 400, 60, 0.08);
  ScalingOptions dense;
  dense.method = SvdMethod::kDense;
  ScalingOptions lanczos;
  lanczos.method = SvdMethod::kLanczos;
  const ScalingResult a = correspondence_analysis(from_dense(m), 3, dense);
  const ScalingResult b = correspondence_analysis(from_dense(m), 3, lanczos);
  EXPECT_EQ(b.method_used, SvdMethod::kLanczos);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(a.singular_values[k], b.singular_values[k], 1e-9);
    EXPECT_GE(abs_correlation(a.row_coords.col(k), b.row_coords.col(k)), 1 - 1e-9);
    EXPECT_NEAR(a.inertia_fraction[k], b.inertia_fraction[k], 1e-9);
  }
  // Deterministic orientation: both solvers pick the same signs.
  EXPECT_LE((a.col_coords - b.col_coords).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(CorrespondenceAnalysis, InvalidDims) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  try {
    correspondence_analysis(from_dense(m), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(SeedFeatures, DuplicatesInheritCoordinates) {
  const DirectedGraph g = testing::make_graph({{"u", "e1"}, {"u", "e2"}, {"v", "e2"},
                                               {"v", "e3"}, {"w", "e1"}, {"w", "e3"},
                                               {"dup", "e1"}, {"dup", "e2"}});
  const NodeSet elites = make_node_set({g.id("e1"), g.id("e2"), g.id("e3")});
  const FilteredBipartite f = filter_bipartite(build_bipartite(g, elites), 2);
  ASSERT_EQ(f.duplicates.size(), 1u);
  const ScalingResult r = correspondence_analysis(f.matrix, 2);
  const FeatureStore s = seed_features_from_scaling(r, f, g);
  EXPECT_EQ(s.dimension(), 2u);
  EXPECT_EQ(s.size(), f.matrix.row_count() + f.duplicates.size());
  EXPECT_EQ(testing::to_vec(s.feature(g.id("dup"))), testing::to_vec(s.feature(g.id("u"))));
  EXPECT_EQ(s.provenance(g.id("dup")), Provenance::kKnown);
  EXPECT_FALSE(s.has(g.id("e1")));
}

TEST(SeedFeatures, NoDuplicatesMeansOneEntryPerRow) {
  const DirectedGraph g = testing::make_graph(
      {{"u", "e1"}, {"u", "e2"}, {"v", "e2"}, {"v", "e3"}, {"w", "e1"}, {"w", "e3"}});
  const NodeSet elites = make_node_set({g.id("e1"), g.id("e2"), g.id("e3")});
  const FilteredBipartite f = filter_bipartite(build_bipartite(g, elites), 2);
  const ScalingResult r = correspondence_analysis(f.matrix, 2);
  EXPECT_EQ(seed_features_from_scaling(r, f, g).size(), 3u);
}

TEST(NodeList, LoadsLabelsAndRejectsUnknown) {
  const DirectedGraph g = testing::make_graph({{"a", "b"}});
  std::istringstream ok("# elites\nb\n\na\n");
  EXPECT_EQ(load_node_list(ok, g), make_node_set({g.id("a"), g.id("b")}));
  std::istringstream bad("a\nzz\n");
  try {
    load_node_list(bad, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

}  // namespace
}  // namespace latentprop
