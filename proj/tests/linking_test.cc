// Copyright 2026 The ziptrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ziptrace/linking.h"

#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles/linker_oracle.h"
#include "random_instances.h"
#include "test_util.h"
#include "ziptrace/defender.h"
#include "ziptrace/synthgen.h"

namespace ziptrace {
namespace {

using ::testing::ElementsAre;
using ::ziptrace::testing::MakeDataset;
using ::ziptrace::testing::T;
using ::ziptrace::testing::U;
using ::ziptrace::testing::Walk;
using ::ziptrace::testing::WalkDataset;

LinkMatrix Train(const Dataset& ds, Seconds window) {
  auto lm = TrainLinkMatrix(ds, window);
  EXPECT_TRUE(lm.ok()) << lm.status();
  return lm.ok() ? *std::move(lm) : LinkMatrix();
}

AnonymousTrace Frag(uint64_t id, std::vector<TowerEvent> events) {
  return {PseudonymId(id), std::move(events)};
}

TEST(TrainLinkMatrixTest, RejectsNonPositiveWindow) {
  Dataset ds = WalkDataset({{1, {1, 2}}});
  EXPECT_EQ(TrainLinkMatrix(ds, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(TrainLinkMatrix(ds, -5).ok());
}

TEST(TrainLinkMatrixTest, CountsTowersReachedWithinWindow) {
  // A [0,10) then B [15,25) then C [100,110): with W = 30 only A -> B.
  Dataset ds = MakeDataset(
      {{U(1), {{T(1), 0, 10}, {T(2), 15, 25}, {T(3), 100, 110}}}});
  LinkMatrix lm = Train(ds, 30);
  EXPECT_EQ(lm.window, 30);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(2)), 1.0);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(3)), 0.0);
  // The B -> C boundary reaches nothing within 30 s.
  EXPECT_FALSE(lm.matrix.HasRow(T(2)));
}

TEST(TrainLinkMatrixTest, WindowCoversSeveralSuccessors) {
  // From A at t=10, both B (10) and C (20) start within 15 s; each once.
  Dataset ds = MakeDataset({{U(1), Walk({1, 2, 3}, 0, 10)}});
  LinkMatrix lm = Train(ds, 15);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(2)), 0.5);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(3)), 0.5);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(2), T(3)), 1.0);
}

TEST(TrainLinkMatrixTest, ContiguousStayIsNotABoundary) {
  Dataset ds = MakeDataset({{U(1), Walk({1, 1, 2}, 0, 10)}});
  LinkMatrix lm = Train(ds, 5);
  // Only the 1 -> 2 boundary at t=20 counts.
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(2)), 1.0);
  EXPECT_DOUBLE_EQ(lm.matrix.RawProbability(T(1), T(1)), 0.0);
  // A gap makes a same-tower boundary count.
  Dataset gap = MakeDataset({{U(1), {{T(1), 0, 10}, {T(1), 12, 20}}}});
  EXPECT_DOUBLE_EQ(Train(gap, 5).matrix.RawProbability(T(1), T(1)), 1.0);
}

TEST(TrainLinkMatrixTest, NoBoundariesMeansPureSmoothing) {
  Dataset ds = WalkDataset({{1, {1}}, {2, {2}}});
  LinkMatrix lm = Train(ds, 30);
  EXPECT_TRUE(lm.matrix.TrainedRows().empty());
  EXPECT_DOUBLE_EQ(lm.matrix.Probability(T(1), T(2)), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(lm.matrix.SmoothingMass(T(1)), 1.0);
}

TEST(TrainLinkMatrixTest, RowsAreStochasticOnSyntheticUsers) {
  SynthConfig cfg;
  cfg.n_users = 30;
  cfg.duration = 2 * kSecondsPerDay;
  auto ds = Generate(cfg);
  ASSERT_TRUE(ds.ok());
  LinkMatrix lm = Train(*ds, 30);
  ASSERT_FALSE(lm.matrix.TrainedRows().empty());
  for (TowerId p : lm.matrix.universe().towers()) {
    EXPECT_NEAR(lm.matrix.RowSum(p), 1.0, 1e-12);
  }
}

TEST(FragmentPoolTest, IndexesByStart) {
  std::vector<AnonymousTrace> f = {Frag(10, Walk({1}, 50)),
                                   Frag(11, Walk({1}, 20)), Frag(12, {}),
                                   Frag(13, Walk({2}, 20))};
  FragmentPool pool(f);
  EXPECT_EQ(pool.size(), 4u);
  EXPECT_EQ(pool.OrdinalOf(PseudonymId(13)), 3u);
  EXPECT_FALSE(pool.OrdinalOf(PseudonymId(99)).has_value());
  auto in = pool.StartingIn(10, 50);
  EXPECT_THAT(std::vector<size_t>(in.begin(), in.end()),
              ElementsAre(1, 3, 0));
  auto strict = pool.StartingIn(20, 49);
  EXPECT_TRUE(strict.empty());
}

TEST(SortForPoolTest, OrdersByStartThenPseudonym) {
  std::vector<AnonymousTrace> f = {Frag(5, Walk({1}, 30)), Frag(9, {}),
                                   Frag(7, Walk({1}, 10)),
                                   Frag(3, Walk({2}, 10))};
  SortForPool(f);
  std::vector<uint64_t> ids;
  for (const auto& a : f) ids.push_back(a.pseudonym.raw());
  EXPECT_THAT(ids, ElementsAre(3, 7, 5, 9));
}

struct Scenario {
  UserProfileSet profiles;
  LinkMatrix lm;
};

Scenario Commuters() {
  Dataset train = MakeDataset({{U(1), Walk({1, 2, 3, 4, 1, 2, 3, 4})},
                               {U(2), Walk({5, 6, 7, 8, 5, 6, 7, 8})}});
  auto p = UserProfileSet::Build(train);
  EXPECT_TRUE(p.ok());
  return {*std::move(p), Train(train, 30)};
}

TEST(LinkChainTest, LinksFragmentWithinWindow) {
  Scenario s = Commuters();
  std::vector<AnonymousTrace> f = {Frag(1, Walk({1, 2}, 0)),
                                   Frag(2, Walk({3, 4}, 30))};
  FragmentPool pool(f);
  EXPECT_THAT(LinkChain(s.lm, pool, 0, 0), ElementsAre(0, 1));
  // 40 s after the end is outside a 30 s window.
  std::vector<AnonymousTrace> far = {Frag(1, Walk({1, 2}, 0)),
                                     Frag(2, Walk({3, 4}, 60))};
  FragmentPool far_pool(far);
  EXPECT_THAT(LinkChain(s.lm, far_pool, 0, 0), ElementsAre(0));
  // A fragment starting exactly at the chain end is not a candidate.
  std::vector<AnonymousTrace> touch = {Frag(1, Walk({1, 2}, 0)),
                                       Frag(2, Walk({3, 4}, 20))};
  FragmentPool touch_pool(touch);
  EXPECT_THAT(LinkChain(s.lm, touch_pool, 0, 0), ElementsAre(0));
}

TEST(LinkChainTest, PrefersLikelySuccessor) {
  Scenario s = Commuters();
  // After tower 2 the user goes to 3; the 7 fragment starts earlier.
  std::vector<AnonymousTrace> f = {Frag(1, Walk({1, 2}, 0)),
                                   Frag(2, Walk({7, 8}, 22)),
                                   Frag(3, Walk({3, 4}, 25))};
  FragmentPool pool(f);
  EXPECT_THAT(LinkChain(s.lm, pool, 0, 0), ElementsAre(0, 2));
}

TEST(LinkChainTest, MaxLinksCapsChain) {
  Scenario s = Commuters();
  std::vector<AnonymousTrace> f = {
      Frag(1, Walk({1}, 0)), Frag(2, Walk({2}, 15)), Frag(3, Walk({3}, 30)),
      Frag(4, Walk({4}, 45)), Frag(5, Walk({1}, 60))};
  FragmentPool pool(f);
  EXPECT_EQ(LinkChain(s.lm, pool, 0, 0).size(), 5u);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(LinkChain(s.lm, pool, 0, k).size(), static_cast<size_t>(k + 1));
  }
}

TEST(LinkAndClassifyTest, SingleFragmentMatchesClassify) {
  Scenario s = Commuters();
  std::vector<AnonymousTrace> f = {Frag(1, Walk({6, 7}))};
  FragmentPool pool(f);
  auto a = LinkAndClassify(s.profiles, s.lm, pool, PseudonymId(1));
  ASSERT_TRUE(a.ok()) << a.status();
  auto c = Classify(s.profiles, std::span<const TowerEvent>(f[0].events));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(a->predicted, c->user);
  EXPECT_DOUBLE_EQ(a->log_score, c->log_score);
  EXPECT_THAT(a->linked_chain, ElementsAre(PseudonymId(1)));
  EXPECT_EQ(LinkAndClassify(s.profiles, s.lm, pool, PseudonymId(2))
                .status()
                .code(),
            absl::StatusCode::kNotFound);
}

TEST(LinkAndClassifyTest, LinkingDisambiguates) {
  // Tower 10 was never seen, so only the linked fragment identifies user 2.
  Dataset train = MakeDataset({{U(1), Walk({1, 2, 3})},
                               {U(2), Walk({5, 6, 7})},
                               {U(3), Walk({9})}});
  auto p = UserProfileSet::Build(train);
  ASSERT_TRUE(p.ok());
  LinkMatrix lm = Train(train, 30);
  std::vector<AnonymousTrace> f = {Frag(1, Walk({10}, 0)),
                                   Frag(2, Walk({6, 7}, 20))};
  FragmentPool pool(f);
  auto linked = LinkAndClassify(*p, lm, pool, PseudonymId(1), 0);
  ASSERT_TRUE(linked.ok());
  EXPECT_EQ(linked->linked_chain.size(), 2u);
  EXPECT_EQ(linked->predicted, U(2));
  auto single = Classify(*p, std::span<const TowerEvent>(f[0].events));
  ASSERT_TRUE(single.ok());
  EXPECT_NE(single->user, U(2));
}

TEST(LinkChainOracleTest, MatchesExhaustiveGreedy) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    testing::LinkInstance inst = testing::RandomLinkInstance(rng);
    std::vector<Trace> traces;
    for (size_t u = 0; u < inst.training.size(); ++u) {
      traces.push_back({U(static_cast<uint32_t>(u + 1)),
                        testing::ToEvents(inst.training[u])});
    }
    LinkMatrix lm = Train(MakeDataset(std::move(traces)), inst.window);
    std::vector<AnonymousTrace> frags;
    for (size_t k = 0; k < inst.fragments.size(); ++k) {
      frags.push_back(Frag(1000 - k, testing::ToEvents(inst.fragments[k])));
    }
    FragmentPool pool(frags);
    oracle::ExactLinkMatrix exact(inst.training, inst.window);
    auto expected = oracle::GreedyChains(inst.Summaries(), exact, inst.target,
                                         inst.window, inst.max_links);
    ASSERT_EQ(expected.size(), 1u) << "instance " << i;
    EXPECT_EQ(LinkChain(lm, pool, inst.target, inst.max_links), expected[0])
        << "instance " << i;
  }
}

TEST(LinkChainPropertyTest, PseudonymRelabelingKeepsChains) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    testing::LinkInstance inst = testing::RandomLinkInstance(rng);
    std::vector<Trace> traces;
    for (size_t u = 0; u < inst.training.size(); ++u) {
      traces.push_back({U(static_cast<uint32_t>(u + 1)),
                        testing::ToEvents(inst.training[u])});
    }
    LinkMatrix lm = Train(MakeDataset(std::move(traces)), inst.window);
    std::vector<AnonymousTrace> a;
    std::vector<AnonymousTrace> b;
    for (size_t k = 0; k < inst.fragments.size(); ++k) {
      a.push_back(Frag(k + 1, testing::ToEvents(inst.fragments[k])));
      b.push_back(Frag(rng(), testing::ToEvents(inst.fragments[k])));
    }
    FragmentPool pa(a);
    FragmentPool pb(b);
    EXPECT_EQ(LinkChain(lm, pa, inst.target, inst.max_links),
              LinkChain(lm, pb, inst.target, inst.max_links));
  }
}

// With one user and 1 s offline windows every fragment is exactly one
// second after its predecessor, so the chain recovers the whole trace.
TEST(LinkChainTest, ShortOfflineWindowsRecoverSingleUser) {
  SynthConfig cfg;
  cfg.n_users = 1;
  cfg.duration = 2 * kSecondsPerDay;
  auto ds = Generate(cfg);
  ASSERT_TRUE(ds.ok());
  DatasetSplit split = SplitByPeriod(*ds, kSecondsPerDay);
  ASSERT_EQ(split.test.size(), 1u);
  RenewalPolicy policy;
  policy.utility = 0.5;
  policy.max_off_time = 1;
  PseudonymIssuer issuer(3);
  auto anon = Anonymize(split.test.traces()[0], policy, issuer);
  ASSERT_TRUE(anon.ok());
  ASSERT_GT(anon->fragments.size(), 5u);
  std::vector<AnonymousTrace> views;
  for (const auto& f : anon->fragments) views.push_back(f.view);
  SortForPool(views);
  FragmentPool pool(views);
  LinkMatrix lm = Train(split.train, 1);
  std::vector<size_t> chain = LinkChain(lm, pool, 0, 0);
  EXPECT_EQ(chain.size(), views.size());
}

}  // namespace
}  // namespace ziptrace
