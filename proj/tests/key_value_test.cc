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

#include "ziptrace/key_value.h"

#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ziptrace {
namespace {

using ::testing::ElementsAre;

absl::StatusOr<KeyValueConfig> Parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::Parse(in);
}

TEST(KeyValueConfigTest, ParsesValuesAndComments) {
  auto kv = Parse("# comment\n a = 1.5 \nname=x y\n\nlist = 1, 2,3\n");
  ASSERT_TRUE(kv.ok()) << kv.status();
  EXPECT_EQ(*kv->GetDouble("a", 0), 1.5);
  EXPECT_EQ(kv->GetString("name"), "x y");
  EXPECT_THAT(*kv->GetIntList("list", {}), ElementsAre(1, 2, 3));
  EXPECT_EQ(*kv->GetInt("missing", 42), 42);
  EXPECT_TRUE(kv->CheckAllConsumed().ok());
}

TEST(KeyValueConfigTest, RejectsDuplicatesAndGarbage) {
  EXPECT_FALSE(Parse("a=1\na=2\n").ok());
  EXPECT_FALSE(Parse("just words\n").ok());
}

TEST(KeyValueConfigTest, BadNumbersAreErrors) {
  auto kv = Parse("a = one\nb = 1.5\n");
  ASSERT_TRUE(kv.ok());
  EXPECT_FALSE(kv->GetDouble("a", 0).ok());
  EXPECT_FALSE(kv->GetInt("b", 0).ok());
}

TEST(KeyValueConfigTest, ReportsUnusedKeys) {
  auto kv = Parse("a = 1\ntypo = 2\n");
  ASSERT_TRUE(kv.ok());
  ASSERT_TRUE(kv->GetInt("a", 0).ok());
  EXPECT_FALSE(kv->CheckAllConsumed().ok());
}

TEST(KeyValueConfigTest, CanonicalIgnoresOrderAndSpacing) {
  auto a = Parse("b = 2\na=1\n");
  auto b = Parse("# x\na = 1\n\nb=2\n");
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(a->Canonical(), b->Canonical());
  EXPECT_EQ(a->Canonical(), "a=1\nb=2\n");
}

}  // namespace
}  // namespace ziptrace
