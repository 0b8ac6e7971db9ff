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


#include "ziptrace/accuracy.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace ziptrace {
namespace {

using ::ziptrace::testing::U;

// Student t quantile with 2 degrees of freedom, which has a closed form.
double T2Quantile(double p) {
  return (2 * p - 1) / std::sqrt(2 * p * (1 - p));
}

Attribution Guess(uint64_t pseudonym, uint32_t predicted) {
  Attribution a;
  a.pseudonym = PseudonymId(pseudonym);
  a.predicted = U(predicted);
  return a;
}

TruthSidecar Truth(std::vector<std::pair<uint64_t, uint32_t>> rows) {
  TruthSidecar t;
  for (auto [p, u] : rows) EXPECT_TRUE(t.Add(PseudonymId(p), U(u)).ok());
  return t;
}

TEST(EvaluateAccuracyTest, AllCorrect) {
  TruthSidecar truth = Truth({{1, 1}, {2, 1}, {3, 2}});
  std::vector<Attribution> a = {Guess(1, 1), Guess(2, 1), Guess(3, 2)};
  auto r = EvaluateAccuracy(a, truth);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->size(), 2u);
  for (const UserAccuracy& u : *r) EXPECT_DOUBLE_EQ(u.accuracy(), 1.0);
  EXPECT_EQ((*r)[0].evaluated, 2);
}

TEST(EvaluateAccuracyTest, MissingPseudonym) {
  TruthSidecar truth = Truth({{1, 1}});
  std::vector<Attribution> a = {Guess(2, 1)};
  EXPECT_EQ(EvaluateAccuracy(a, truth).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(EvaluateAccuracyTest, ThreeUserFixture) {
  // u1: 2/3, u2: 0/1, u3: 1/2.
  TruthSidecar truth =
      Truth({{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 3}});
  std::vector<Attribution> a = {Guess(1, 1), Guess(2, 1), Guess(3, 2),
                                Guess(4, 1), Guess(5, 3), Guess(6, 1)};
  auto r = EvaluateAccuracy(a, truth);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->size(), 3u);
  EXPECT_EQ((*r)[0].user, U(1));
  EXPECT_DOUBLE_EQ((*r)[0].accuracy(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ((*r)[1].accuracy(), 0.0);
  EXPECT_DOUBLE_EQ((*r)[2].accuracy(), 0.5);
  std::vector<double> acc;
  for (const UserAccuracy& u : *r) acc.push_back(u.accuracy());
  EXPECT_NEAR(Summarize(acc).mean, 7.0 / 18.0, 1e-15);
}

TEST(EvaluateAccuracyTest, UniformGuessingNearChance) {
  const int n = 20;
  std::mt19937_64 rng(1);
  TruthSidecar truth;
  std::vector<Attribution> a;
  uint64_t id = 1;
  for (int u = 1; u <= n; ++u) {
    for (int k = 0; k < 500; ++k, ++id) {
      ASSERT_TRUE(truth.Add(PseudonymId(id), U(u)).ok());
      a.push_back(Guess(id, 1 + rng() % n));
    }
  }
  auto r = EvaluateAccuracy(a, truth);
  ASSERT_TRUE(r.ok());
  std::vector<double> acc;
  for (const UserAccuracy& u : *r) acc.push_back(u.accuracy());
  EXPECT_NEAR(Summarize(acc).mean, 1.0 / n, 0.01);
}

TEST(SummarizeTest, StudentTForSmallSamples) {
  std::vector<double> v = {0.0, 0.5, 1.0};
  MeanWithCi s = Summarize(v);
  EXPECT_EQ(s.n, 3);
  EXPECT_DOUBLE_EQ(s.mean, 0.5);
  // sd = 0.5, se = 0.5 / sqrt(3).
  EXPECT_NEAR(s.ci95_halfwidth, T2Quantile(0.975) * 0.5 / std::sqrt(3.0),
              1e-9);
  EXPECT_NEAR(s.ci95_halfwidth, 1.24207, 1e-5);
}

TEST(SummarizeTest, NormalForLargeSamples) {
  std::vector<double> v;
  for (int i = 0; i < 40; ++i) v.push_back(i % 2);
  MeanWithCi s = Summarize(v);
  double var = 0;
  for (double x : v) var += (x - 0.5) * (x - 0.5);
  const double se = std::sqrt(var / 39.0) / std::sqrt(40.0);
  EXPECT_NEAR(s.ci95_halfwidth, 1.959963984540054 * se, 1e-12);
}

TEST(SummarizeTest, DegenerateSamples) {
  EXPECT_EQ(Summarize({}).n, 0);
  EXPECT_DOUBLE_EQ(Summarize({}).ci95_halfwidth, 0.0);
  std::vector<double> one = {0.7};
  EXPECT_DOUBLE_EQ(Summarize(one).mean, 0.7);
  EXPECT_DOUBLE_EQ(Summarize(one).ci95_halfwidth, 0.0);
  std::vector<double> same = {0.3, 0.3, 0.3};
  EXPECT_NEAR(Summarize(same).ci95_halfwidth, 0.0, 1e-15);
}

TEST(SummarizeByTypeTest, GroupsKnownUsers) {
  std::vector<UserAccuracy> per_user = {
      {U(1), 2, 2}, {U(2), 2, 0}, {U(3), 4, 1}, {U(4), 1, 1}};
  absl::flat_hash_map<UserId, UserType> types = {
      {U(1), UserType::kPredictableMixing},
      {U(2), UserType::kPredictableMixing},
      {U(3), UserType::kUnpredictableNonMixing}};
  auto by = SummarizeByType(per_user, types);
  ASSERT_EQ(by.size(), 2u);
  EXPECT_EQ(by[UserType::kPredictableMixing].n, 2);
  EXPECT_DOUBLE_EQ(by[UserType::kPredictableMixing].mean, 0.5);
  EXPECT_DOUBLE_EQ(by[UserType::kUnpredictableNonMixing].mean, 0.25);
  EXPECT_FALSE(by.contains(UserType::kPredictableNonMixing));
}

}  // namespace
}  // namespace ziptrace
