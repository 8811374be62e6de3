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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "latentprop/latentprop.h"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* followers[] = {"u", "u", "v", "w"};
    const char* followees[] = {"a", "b", "a", "u"};
    ASSERT_EQ(lprop_graph_from_edges(followers, followees, 4, &graph_), LPROP_OK);
    dir_ = fs::temp_directory_path() /
           ("latentprop_capi_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    lprop_graph_free(graph_);
    fs::remove_all(dir_);
  }
  uint32_t id(const char* label) {
    uint32_t v = 0;
    EXPECT_EQ(lprop_graph_find(graph_, label, &v), LPROP_OK);
    return v;
  }

  lprop_graph* graph_ = nullptr;
  fs::path dir_;
};

TEST_F(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(lprop_version(), "0.1.0");
  EXPECT_STREQ(lprop_status_name(LPROP_OK), "ok");
  EXPECT_STRNE(lprop_status_name(LPROP_ERR_RANK_DEFICIENT), "ok");
}

TEST_F(CApi, GraphQueries) {
  EXPECT_EQ(lprop_graph_node_count(graph_), 5u);
  EXPECT_EQ(lprop_graph_edge_count(graph_), 4u);
  const uint32_t* nb = nullptr;
  size_t n = 0;
  ASSERT_EQ(lprop_graph_neighbors(graph_, id("a"), LPROP_DOWN, &nb, &n), LPROP_OK);
  ASSERT_EQ(n, 2u);
  EXPECT_STREQ(lprop_graph_label(graph_, nb[0]), "u");
  EXPECT_STREQ(lprop_graph_label(graph_, nb[1]), "v");
  EXPECT_EQ(lprop_graph_label(graph_, 99), nullptr);

  const uint32_t set[] = {id("u"), id("v")};
  uint32_t* out = nullptr;
  ASSERT_EQ(lprop_graph_neighborhood(graph_, set, 2, LPROP_UP, &out, &n), LPROP_OK);
  EXPECT_EQ(n, 2u);
  lprop_free_ids(out);
}

TEST_F(CApi, ErrorsSetLastError) {
  uint32_t v = 0;
  EXPECT_EQ(lprop_graph_find(graph_, "nobody", &v), LPROP_ERR_NOT_FOUND);
  EXPECT_NE(std::strstr(lprop_last_error(), "nobody"), nullptr);
  EXPECT_EQ(lprop_graph_find(nullptr, "u", &v), LPROP_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(lprop_last_error()), 0u);
  lprop_graph* g = nullptr;
  EXPECT_EQ(lprop_graph_load((dir_ / "missing.txt").c_str(), ' ', &g), LPROP_ERR_IO);
  EXPECT_EQ(g, nullptr);
  const uint32_t* nb = nullptr;
  size_t n = 0;
  EXPECT_EQ(lprop_graph_neighbors(graph_, 1000, LPROP_UP, &nb, &n), LPROP_ERR_NOT_FOUND);

  std::ofstream(dir_ / "bad.txt") << "a b\nc\n";
  EXPECT_EQ(lprop_graph_load((dir_ / "bad.txt").c_str(), ' ', &g), LPROP_ERR_PARSE);
  EXPECT_NE(std::strstr(lprop_last_error(), "2"), nullptr);
}

TEST_F(CApi, MetricsMatchHandComputation) {
  const double e[] = {0.0, 0.0};
  const double t[] = {3.0, 4.0};
  double out = 0;
  ASSERT_EQ(lprop_estimation_error(e, t, 2, 2.0, &out), LPROP_OK);
  EXPECT_DOUBLE_EQ(out, 5.0);
  ASSERT_EQ(lprop_estimation_error(e, t, 2, 1.0, &out), LPROP_OK);
  EXPECT_DOUBLE_EQ(out, 7.0);
  EXPECT_EQ(lprop_estimation_error(e, t, 2, 0.5, &out), LPROP_ERR_INVALID_ARGUMENT);

  lprop_features* f = nullptr;
  ASSERT_EQ(lprop_features_create(graph_, 1, &f), LPROP_OK);
  const double zero = 0.0;
  const double one = 1.0;
  ASSERT_EQ(lprop_features_set_known(f, id("a"), &zero, 1), LPROP_OK);
  ASSERT_EQ(lprop_features_set_known(f, id("b"), &one, 1), LPROP_OK);
  EXPECT_EQ(lprop_features_set_known(f, id("b"), &one, 2), LPROP_ERR_DIMENSION_MISMATCH);
  const uint32_t ab[] = {id("a"), id("b")};
  ASSERT_EQ(lprop_incoherence(f, ab, 2, 2.0, &out), LPROP_OK);
  EXPECT_DOUBLE_EQ(out, 0.5);
  const uint32_t au[] = {id("a"), id("u")};
  EXPECT_EQ(lprop_incoherence(f, au, 2, 2.0, &out), LPROP_ERR_MISSING_FEATURE);

  uint32_t* nb = nullptr;
  size_t n = 0;
  ASSERT_EQ(lprop_coherent_neighborhood(graph_, f, ab, 2, LPROP_DOWN, 0.1, 2.0, &nb, &n),
            LPROP_OK);
  // v follows only a; u follows both and has incoherence 0.5.
  ASSERT_EQ(n, 1u);
  EXPECT_EQ(nb[0], id("v"));
  lprop_free_ids(nb);
  lprop_features_free(f);
}

TEST_F(CApi, PropagateAndWriteOutputs) {
  lprop_features* f = nullptr;
  ASSERT_EQ(lprop_features_create(graph_, 1, &f), LPROP_OK);
  const double zero = 0.0;
  const double tenth = 0.1;
  ASSERT_EQ(lprop_features_set_known(f, id("a"), &zero, 1), LPROP_OK);
  ASSERT_EQ(lprop_features_set_known(f, id("b"), &tenth, 1), LPROP_OK);

  lprop_propagate_options opts;
  lprop_propagate_options_init(&opts);
  EXPECT_EQ(opts.max_steps, 1);
  opts.direction = LPROP_DOWN;
  opts.epsilon = 0.2;
  opts.max_steps = 5;
  lprop_propagation* r = nullptr;
  ASSERT_EQ(lprop_propagate(graph_, f, nullptr, 0, &opts, &r), LPROP_OK);
  const lprop_features* est = lprop_propagation_estimates(r);
  EXPECT_EQ(lprop_features_count(est), 5u);
  int kind = 0;
  int step = 0;
  ASSERT_EQ(lprop_features_provenance(est, id("w"), &kind, &step), LPROP_OK);
  EXPECT_EQ(kind, 2);
  EXPECT_EQ(step, 1);
  double x = 0;
  ASSERT_EQ(lprop_features_get(est, id("u"), &x, 1), LPROP_OK);
  EXPECT_DOUBLE_EQ(x, 0.05);

  size_t added = 0;
  size_t rejected = 0;
  long pivots = 0;
  ASSERT_EQ(lprop_propagation_step_log(r, 0, &added, &rejected, &pivots), LPROP_OK);
  EXPECT_EQ(added, 2u);
  EXPECT_EQ(pivots, -1);
  EXPECT_EQ(lprop_propagation_step_log(r, 100, &added, &rejected, &pivots),
            LPROP_ERR_NOT_FOUND);

  const fs::path log = dir_ / "log.csv";
  ASSERT_EQ(lprop_propagation_write_log(r, log.c_str()), LPROP_OK);
  EXPECT_EQ(slurp(log).rfind("step,size_delta_v,size_delta_v_bar,size_pivots\n", 0), 0u);
  const fs::path out = dir_ / "features.csv";
  ASSERT_EQ(lprop_features_write(est, graph_, out.c_str(), 1), LPROP_OK);
  lprop_features* back = nullptr;
  size_t skipped = 7;
  ASSERT_EQ(lprop_features_load(graph_, out.c_str(), &back, &skipped), LPROP_OK);
  EXPECT_EQ(skipped, 0u);
  EXPECT_EQ(lprop_features_count(back), 5u);
  lprop_features_free(back);

  EXPECT_EQ(lprop_propagation_write_log(r, (dir_ / "no" / "such" / "dir.csv").c_str()),
            LPROP_ERR_IO);
  lprop_propagation_free(r);

  opts.max_steps = 0;
  EXPECT_EQ(lprop_propagate(graph_, f, nullptr, 0, &opts, &r), LPROP_ERR_INVALID_ARGUMENT);
  lprop_features_free(f);
}

TEST_F(CApi, GenerateScaleEvaluate) {
  lprop_graph* g = nullptr;
  lprop_features* truth = nullptr;
  uint32_t* elites = nullptr;
  size_t elite_count = 0;
  ASSERT_EQ(lprop_generate(R"({"nodes": 300, "elites": 15, "mean_out_degree": 10})", &g,
                           &truth, &elites, &elite_count),
            LPROP_OK);
  EXPECT_EQ(elite_count, 15u);
  EXPECT_EQ(lprop_features_count(truth), 300u);

  lprop_scale_options so;
  lprop_scale_options_init(&so);
  EXPECT_EQ(so.min_degree, 3);
  lprop_scaling* s = nullptr;
  ASSERT_EQ(lprop_scale(g, elites, elite_count, &so, &s), LPROP_OK);
  EXPECT_EQ(lprop_scaling_col_count(s), 15u);
  double sv = 0;
  double frac = 0;
  ASSERT_EQ(lprop_scaling_inertia(s, 0, &sv, &frac), LPROP_OK);
  EXPECT_GT(sv, 0.0);
  EXPECT_GT(frac, 0.0);
  EXPECT_LE(frac, 1.0);
  lprop_features* seeds = nullptr;
  ASSERT_EQ(lprop_scaling_seed_features(s, &seeds), LPROP_OK);
  EXPECT_GE(lprop_features_count(seeds), lprop_scaling_row_count(s));
  lprop_features_free(seeds);
  lprop_scaling_free(s);

  so.dims = 1000;
  EXPECT_EQ(lprop_scale(g, elites, elite_count, &so, &s), LPROP_ERR_RANK_DEFICIENT);

  const double eps[] = {0.2, 1.0};
  lprop_evaluate_options eo;
  lprop_evaluate_options_init(&eo);
  EXPECT_EQ(eo.k, 20u);
  eo.protocol = LPROP_PROTOCOL_KFOLD_B;
  eo.epsilons = eps;
  eo.epsilon_count = 2;
  eo.k = 4;
  uint32_t* sample = nullptr;
  size_t sample_count = 0;
  ASSERT_EQ(lprop_sample_spatial(truth, nullptr, 0, 100, 20, 3, &sample, &sample_count),
            LPROP_OK);
  EXPECT_EQ(sample_count, 100u);
  lprop_report* rep = nullptr;
  ASSERT_EQ(lprop_evaluate(g, truth, sample, sample_count, &eo, &rep), LPROP_OK);
  const fs::path csv = dir_ / "report.csv";
  ASSERT_EQ(lprop_report_write_csv(rep, csv.c_str()), LPROP_OK);
  EXPECT_EQ(slurp(csv).rfind(
                "epsilon,method,direction,fold,stat,error,size_delta_v,size_pivots,coverage\n", 0),
            0u);
  const std::string paths[] = {csv.string(), csv.string()};
  const char* cpaths[] = {paths[0].c_str(), paths[1].c_str()};
  const fs::path merged = dir_ / "merged.csv";
  ASSERT_EQ(lprop_report_merge(cpaths, 2, merged.c_str()), LPROP_OK);
  EXPECT_GT(slurp(merged).size(), slurp(csv).size());
  lprop_report_free(rep);

  eo.k = 1000;
  EXPECT_EQ(lprop_evaluate(g, truth, sample, sample_count, &eo, &rep), LPROP_ERR_EMPTY);
  lprop_free_ids(sample);
  lprop_free_ids(elites);
  lprop_features_free(truth);
  lprop_graph_free(g);

  EXPECT_EQ(lprop_generate(R"({"nodes": 10, "elites": 2, "mean_out_degree": 20})", &g, nullptr, nullptr,
                           nullptr),
            LPROP_ERR_INFEASIBLE);
  EXPECT_EQ(lprop_generate("{", &g, nullptr, nullptr, nullptr), LPROP_ERR_PARSE);
}

TEST_F(CApi, FreeFunctionsAcceptNull) {
  lprop_graph_free(nullptr);
  lprop_features_free(nullptr);
  lprop_scaling_free(nullptr);
  lprop_propagation_free(nullptr);
  lprop_report_free(nullptr);
  lprop_free_ids(nullptr);
  SUCCEED();
}

}  // namespace
