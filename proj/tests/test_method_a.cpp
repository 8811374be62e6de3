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

#include <random>

#include <gtest/gtest.h>

#include "latentprop/error.hpp"
#include "latentprop/method_a.hpp"
#include "test_support.hpp"

namespace latentprop {
namespace {

using testing::make_graph;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

PropagationParams params(Direction d, double eps) {
  PropagationParams p;
  p.direction = d;
  p.epsilon = eps;
  return p;
}

struct Fixture {
  DirectedGraph g;
  FeatureStore known;
};

// V0 = {a:0.0, b:0.2}, edges (a,u),(b,u).
Fixture two_followers() {
  Fixture f{make_graph({{"a", "u"}, {"b", "u"}}), {}};
  f.known = FeatureStore(f.g.node_count(), 1);
  f.known.set_known(f.g.id("a"), std::vector<double>{0.0});
  f.known.set_known(f.g.id("b"), std::vector<double>{0.2});
  return f;
}

TEST(InitState, Basics) {
  Fixture f = two_followers();
  const NodeSet seed = make_node_set({f.g.id("a"), f.g.id("b")});
  const PropagationState s = init_state(f.g, f.known, seed, params(Direction::kUp, 0.1));
  EXPECT_EQ(s.coherent().size(), 2u);
  EXPECT_TRUE(s.incoherent().empty());
  EXPECT_EQ(s.step(), 0);
  EXPECT_EQ(s.estimates().provenance(f.g.id("a")), Provenance::kKnown);
  EXPECT_EQ(code_of([&] {
              init_state(f.g, f.known, NodeSet{f.g.id("u")}, params(Direction::kUp, 0.1));
            }),
            ErrorCode::kMissingFeature);
  EXPECT_EQ(code_of([&] { init_state(f.g, f.known, NodeSet{}, params(Direction::kUp, 0.1)); }),
            ErrorCode::kEmpty);
  EXPECT_EQ(code_of([&] { init_state(f.g, f.known, seed, params(Direction::kUp, -0.1)); }),
            ErrorCode::kInvalidArgument);
}

TEST(StepMethodA, CoherentAddition) {
  Fixture f = two_followers();
  PropagationState s = init_state(f.g, f.known, make_node_set({f.g.id("a"), f.g.id("b")}),
                                  params(Direction::kUp, 0.2));
  const StepDelta d = step_method_a(s, f.g);
  EXPECT_EQ(d.added, NodeSet{f.g.id("u")});
  EXPECT_TRUE(d.rejected.empty());
  EXPECT_NEAR(s.estimates().feature(f.g.id("u"))[0], 0.1, 1e-15);
  EXPECT_EQ(s.estimates().step(f.g.id("u")), 0);
  EXPECT_EQ(s.step(), 1);
}

TEST(StepMethodA, IncoherentNodeIsNeverReconsidered) {
  Fixture f = two_followers();
  PropagationState s = init_state(f.g, f.known, make_node_set({f.g.id("a"), f.g.id("b")}),
                                  params(Direction::kUp, 0.05));
  const StepDelta d0 = step_method_a(s, f.g);
  EXPECT_TRUE(d0.added.empty());
  EXPECT_EQ(d0.rejected, NodeSet{f.g.id("u")});
  const StepDelta d1 = step_method_a(s, f.g);
  EXPECT_TRUE(d1.added.empty());
  EXPECT_TRUE(d1.rejected.empty());
  EXPECT_FALSE(s.estimates().has(f.g.id("u")));
}

TEST(StepMethodA, FixedPointOnlyAdvancesStep) {
  Fixture f = two_followers();
  PropagationState s = init_state(f.g, f.known, make_node_set({f.g.id("a"), f.g.id("b")}),
                                  params(Direction::kUp, 0.2));
  step_method_a(s, f.g);
  const NodeSet v = s.coherent(), vbar = s.incoherent();
  const StepDelta d = step_method_a(s, f.g);
  EXPECT_TRUE(d.added.empty());
  EXPECT_TRUE(d.rejected.empty());
  EXPECT_EQ(s.coherent(), v);
  EXPECT_EQ(s.incoherent(), vbar);
  EXPECT_EQ(s.step(), 2);
}

TEST(RunMethodA, Chain) {
  const DirectedGraph g = make_graph({{"a", "u1"}, {"u1", "u2"}});
  FeatureStore known(g.node_count(), 1);
  known.set_known(g.id("a"), std::vector<double>{0.0});
  const PropagationState s =
      run_method_a(g, known, NodeSet{g.id("a")}, params(Direction::kUp, 0.1), 5);
  EXPECT_EQ(s.estimates().feature(g.id("u1"))[0], 0.0);
  EXPECT_EQ(s.estimates().step(g.id("u1")), 0);
  EXPECT_EQ(s.estimates().feature(g.id("u2"))[0], 0.0);
  EXPECT_EQ(s.estimates().step(g.id("u2")), 1);
  ASSERT_EQ(s.log().size(), 3u);
  EXPECT_EQ(s.log()[2].added, 0u);
  EXPECT_EQ(s.log()[2].rejected, 0u);

  const PropagationState one =
      run_method_a(g, known, NodeSet{g.id("a")}, params(Direction::kUp, 0.1), 1);
  EXPECT_TRUE(one.estimates().has(g.id("u1")));
  EXPECT_FALSE(one.estimates().has(g.id("u2")));
  EXPECT_EQ(code_of([&] {
              run_method_a(g, known, NodeSet{g.id("a")}, params(Direction::kUp, 0.1), 0);
            }),
            ErrorCode::kInvalidArgument);
}

TEST(RunMethodA, DisconnectedSeedIsImmediateFixedPoint) {
  const DirectedGraph g = make_graph({{"x", "y"}}, {"lonely"});
  FeatureStore known(g.node_count(), 2);
  known.set_known(g.id("lonely"), std::vector<double>{1, 1});
  const PropagationState s =
      run_method_a(g, known, NodeSet{g.id("lonely")}, params(Direction::kDown, 0.3), 4);
  ASSERT_EQ(s.log().size(), 1u);
  EXPECT_EQ(s.log()[0].added, 0u);
  EXPECT_EQ(s.log()[0].rejected, 0u);
  EXPECT_EQ(s.estimates().size(), 1u);
}

TEST(MethodAProperties, InvariantsAndNaiveEstimates) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 20 + rng() % 100;
    const DirectedGraph g = testing::random_graph(rng, n, 0.04);
    const FeatureStore known = testing::random_features(rng, n, 2);
    const NodeSet seed = testing::random_subset(rng, n, 0.1);
    const Direction d = trial % 2 ? Direction::kUp : Direction::kDown;
    PropagationState s = init_state(g, known, seed, params(d, 0.3 + 0.2 * (trial % 4)));
    for (int step = 0; step < 6; ++step) {
      const NodeSet v = s.coherent(), vbar = s.incoherent();
      const NodeSet nd = neighborhood_of_set(g, v, d);
      const StepDelta delta = step_method_a(s, g);
      for (const NodeId x : delta.added) {
        EXPECT_FALSE(std::binary_search(v.begin(), v.end(), x));
        EXPECT_FALSE(std::binary_search(vbar.begin(), vbar.end(), x));
        // Naive mean over the pre-step coherent set.
        std::vector<double> mean(2, 0.0);
        std::size_t count = 0;
        for (const NodeId u : v) {
          const bool linked = d == Direction::kUp ? testing::oracle_edge(g, u, x)
                                                  : testing::oracle_edge(g, x, u);
          if (!linked) continue;
          ++count;
          for (int k = 0; k < 2; ++k) mean[k] += s.estimates().feature(u)[k];
        }
        ASSERT_GT(count, 0u);
        for (int k = 0; k < 2; ++k) {
          EXPECT_NEAR(s.estimates().feature(x)[k], mean[k] / count, 1e-12);
        }
      }
      for (const NodeId x : delta.rejected) {
        EXPECT_FALSE(std::binary_search(vbar.begin(), vbar.end(), x));
        EXPECT_FALSE(std::binary_search(delta.added.begin(), delta.added.end(), x));
      }
      // Everything in n_d(V_i) is now classified.
      for (const NodeId x : nd) {
        EXPECT_TRUE(s.is_coherent(x) || s.is_incoherent(x));
      }
      EXPECT_TRUE(std::includes(s.coherent().begin(), s.coherent().end(), v.begin(), v.end()));
      EXPECT_TRUE(std::includes(s.incoherent().begin(), s.incoherent().end(), vbar.begin(),
                                vbar.end()));
      NodeSet both;
      std::set_intersection(s.coherent().begin(), s.coherent().end(), s.incoherent().begin(),
                            s.incoherent().end(), std::back_inserter(both));
      EXPECT_TRUE(both.empty());
      for (const NodeId x : seed) {
        EXPECT_EQ(s.estimates().provenance(x), Provenance::kKnown);
        EXPECT_EQ(testing::to_vec(s.estimates().feature(x)),
                  testing::to_vec(known.feature(x)));
      }
    }
  }
}

TEST(MethodAProperties, SecondStepNeverRevisitsFirstNeighborhood) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 60;
    const DirectedGraph g = testing::random_graph(rng, n, 0.05);
    const FeatureStore known = testing::random_features(rng, n, 2);
    const NodeSet seed = testing::random_subset(rng, n, 0.15);
    PropagationState s = init_state(g, known, seed, params(Direction::kUp, 0.6));
    const NodeSet n0 = neighborhood_of_set(g, seed, Direction::kUp);
    step_method_a(s, g);
    const StepDelta d1 = step_method_a(s, g);
    for (const NodeId x : d1.added) {
      EXPECT_FALSE(std::binary_search(n0.begin(), n0.end(), x));
    }
  }
}

TEST(MethodAProperties, KnownNonSeedFeaturesAreNotOverwritten) {
  // u is reachable from the seed but already carries a Known feature outside
  // the seed; it must keep that value in the known store and in the state.
  const DirectedGraph g = make_graph({{"a", "u"}});
  FeatureStore known(g.node_count(), 1);
  known.set_known(g.id("a"), std::vector<double>{0.0});
  known.set_known(g.id("u"), std::vector<double>{9.0});
  const PropagationState s =
      run_method_a(g, known, NodeSet{g.id("a")}, params(Direction::kUp, 1.0), 3);
  EXPECT_EQ(known.feature(g.id("u"))[0], 9.0);
  EXPECT_EQ(known.provenance(g.id("u")), Provenance::kKnown);
  EXPECT_EQ(s.estimates().feature(g.id("u"))[0], 0.0);
}

}  // namespace
}  // namespace latentprop
