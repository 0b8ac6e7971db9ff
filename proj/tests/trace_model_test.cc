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

#include "ziptrace/trace_model.h"

#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ziptrace {
namespace {

using ::testing::ElementsAre;
using testing::T;
using testing::U;

TEST(ValidateEventsTest, AcceptsSharedHandoffBoundary) {
  std::vector<TowerEvent> ev = {{T(1), 1000, 1060}, {T(2), 1060, 1200}};
  EXPECT_TRUE(ValidateEvents(ev).ok());
}

TEST(ValidateEventsTest, RejectsOverlap) {
  std::vector<TowerEvent> ev = {{T(1), 1000, 1060}, {T(2), 1050, 1200}};
  EXPECT_EQ(ValidateEvents(ev).code(), absl::StatusCode::kInvalidArgument);
}

TEST(ValidateEventsTest, RejectsNegativeDuration) {
  std::vector<TowerEvent> ev = {{T(1), 20, 10}};
  EXPECT_FALSE(ValidateEvents(ev).ok());
}

TEST(DatasetTest, SortsAndMergesOwners) {
  auto ds = Dataset::Create({{U(7), {{T(2), 1060, 1200}}},
                             {U(3), {{T(5), 0, 5}}},
                             {U(7), {{T(1), 1000, 1060}}}});
  ASSERT_TRUE(ds.ok()) << ds.status();
  ASSERT_EQ(ds->size(), 2u);
  EXPECT_THAT(ds->users(), ElementsAre(U(3), U(7)));
  const Trace* t = ds->Find(U(7));
  ASSERT_NE(t, nullptr);
  EXPECT_THAT(t->events, ElementsAre(TowerEvent{T(1), 1000, 1060},
                                     TowerEvent{T(2), 1060, 1200}));
  EXPECT_EQ(ds->Find(U(4)), nullptr);
}

TEST(DatasetTest, MergedOwnersStillValidated) {
  auto ds = Dataset::Create(
      {{U(7), {{T(1), 1000, 1060}}}, {U(7), {{T(2), 1050, 1200}}}});
  EXPECT_FALSE(ds.ok());
}

TEST(DatasetTest, SpanAndAttachedTime) {
  Dataset ds = testing::MakeDataset(
      {{U(1), {{T(1), 5, 10}, {T(2), 20, 30}}}, {U(2), {{T(1), 0, 4}}}});
  auto span = ds.TimeSpan();
  ASSERT_TRUE(span.has_value());
  EXPECT_EQ(span->first, 0);
  EXPECT_EQ(span->second, 30);
  EXPECT_EQ(ds.AttachedSeconds(), 19);
  EXPECT_FALSE(Dataset().TimeSpan().has_value());
}

TEST(TowerSequenceTest, CollapseIsOptional) {
  auto ev = testing::Walk({1, 1, 2, 2, 2, 1});
  EXPECT_THAT(TowerSequence(ev, true), ElementsAre(T(1), T(2), T(1)));
  EXPECT_EQ(TowerSequence(ev, false).size(), 6u);
}

TEST(SplitByPeriodTest, PointEvents) {
  Dataset ds = testing::MakeDataset(
      {{U(1), {{T(1), 10, 10}, {T(2), 20, 20}, {T(3), 30, 30}}}});
  DatasetSplit s = SplitByPeriod(ds, 25);
  ASSERT_EQ(s.train.size(), 1u);
  ASSERT_EQ(s.test.size(), 1u);
  EXPECT_EQ(s.train.traces()[0].events.size(), 2u);
  EXPECT_THAT(s.test.traces()[0].events,
              ElementsAre(TowerEvent{T(3), 30, 30}));
}

TEST(SplitByPeriodTest, BoundaryBeforeEverything) {
  Dataset ds = testing::WalkDataset({{1, {1, 2, 3}}});
  DatasetSplit s = SplitByPeriod(ds, -5);
  EXPECT_TRUE(s.train.empty());
  EXPECT_EQ(s.test.traces(), ds.traces());
}

TEST(SplitByPeriodTest, StraddlingEventIsCut) {
  Dataset ds = testing::MakeDataset({{U(1), {{T(4), 20, 40}}}});
  DatasetSplit s = SplitByPeriod(ds, 30);
  EXPECT_THAT(s.train.traces()[0].events,
              ElementsAre(TowerEvent{T(4), 20, 30}));
  EXPECT_THAT(s.test.traces()[0].events,
              ElementsAre(TowerEvent{T(4), 30, 40}));
}

TEST(SplitByPeriodTest, ConservesAttachedTimeOnRandomData) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Trace> traces;
    for (uint32_t u = 0; u < 4; ++u) {
      Trace t{U(u), {}};
      Seconds clock = std::uniform_int_distribution<Seconds>(0, 50)(rng);
      for (int i = 0; i < 15; ++i) {
        Seconds len = std::uniform_int_distribution<Seconds>(0, 30)(rng);
        t.events.push_back({T(rng() % 6), clock, clock + len});
        clock += len + std::uniform_int_distribution<Seconds>(0, 5)(rng);
      }
      traces.push_back(std::move(t));
    }
    Dataset ds = testing::MakeDataset(std::move(traces));
    Seconds boundary = std::uniform_int_distribution<Seconds>(-10, 500)(rng);
    DatasetSplit s = SplitByPeriod(ds, boundary);
    EXPECT_EQ(s.train.AttachedSeconds() + s.test.AttachedSeconds(),
              ds.AttachedSeconds());
    for (const Trace& t : s.train.traces()) {
      for (const TowerEvent& e : t.events) EXPECT_LE(e.end, boundary);
    }
    for (const Trace& t : s.test.traces()) {
      for (const TowerEvent& e : t.events) EXPECT_GE(e.start, boundary);
    }
  }
}

TEST(ClipEventsTest, TruncatesToWindow) {
  auto ev = testing::Walk({1, 2, 3}, 0, 10);
  EXPECT_THAT(ClipEvents(ev, 5, 25),
              ElementsAre(TowerEvent{T(1), 5, 10}, TowerEvent{T(2), 10, 20},
                          TowerEvent{T(3), 20, 25}));
  EXPECT_TRUE(ClipEvents(ev, 40, 50).empty());
}

}  // namespace
}  // namespace ziptrace
