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


#include "ziptrace/battery.h"

#include <sstream>

#include "gtest/gtest.h"

namespace ziptrace {
namespace {

KeyValueConfig Parse(const std::string& text) {
  std::istringstream in(text);
  auto kv = KeyValueConfig::Parse(in);
  EXPECT_TRUE(kv.ok()) << kv.status();
  return kv.ok() ? *std::move(kv) : KeyValueConfig();
}

TEST(CycleEnergyTest, MeasuredRadios) {
  // (2006 mW * 2.6 s + 1120 mW * 3.0 s) / 3600 s/h.
  EXPECT_NEAR(CycleEnergy(Radio4G()), 8575.6 / 3600.0, 1e-12);
  EXPECT_NEAR(CycleEnergy(Radio4G()), 2.3821, 1e-4);
  EXPECT_NEAR(CycleEnergy(Radio3G()), 15618.0 / 3600.0, 1e-12);
  EXPECT_NEAR(CycleEnergy(Radio3G()), 4.3383, 1e-4);
  EXPECT_GT(CycleEnergy(Radio3G()), CycleEnergy(Radio4G()));
}

TEST(DailyBatteryFractionTest, FortyFiveCyclesOn4G) {
  BatterySpec battery;
  EXPECT_DOUBLE_EQ(battery.capacity_mwh(), 3.85 * 2800.0);
  EXPECT_NEAR(DailyBatteryFraction(45, Radio4G()), 0.00994, 1e-5);
}

TEST(DailyBatteryFractionTest, LinearInCycles) {
  const double one = DailyBatteryFraction(1, Radio3G());
  for (double n : {0.0, 2.0, 10.0, 100.0}) {
    EXPECT_NEAR(DailyBatteryFraction(n, Radio3G()), n * one, 1e-15);
  }
  EXPECT_GT(DailyBatteryFraction(50, Radio3G()),
            DailyBatteryFraction(50, Radio4G()));
}

TEST(DailyBatteryFractionTest, ClampsToUnitInterval) {
  EXPECT_DOUBLE_EQ(DailyBatteryFraction(1e9, Radio3G()), 1.0);
  EXPECT_DOUBLE_EQ(DailyBatteryFraction(-5, Radio3G()), 0.0);
}

TEST(OfflineTimePerCycleTest, IsConnectTime) {
  EXPECT_DOUBLE_EQ(OfflineTimePerCycle(Radio4G()), 2.6);
  EXPECT_DOUBLE_EQ(OfflineTimePerCycle(Radio3G()), 5.0);
  EXPECT_DOUBLE_EQ(OfflineTimePerCycle(RadioProfile{}), 0.0);
}

TEST(RadioProfileTest, LoadsFromKeyValue) {
  KeyValueConfig kv = Parse(
      "radio4g.connect_power = 1000\n"
      "radio4g.connect_time = 1\n"
      "radio4g.label = lab\n");
  auto r = RadioProfileFromKeyValue(kv, "radio4g.", Radio4G());
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->label, "lab");
  EXPECT_DOUBLE_EQ(r->connect_power_mw, 1000);
  EXPECT_DOUBLE_EQ(r->disconnect_power_mw, 1120);
  EXPECT_NEAR(CycleEnergy(*r), (1000.0 + 3360.0) / 3600.0, 1e-12);
  EXPECT_TRUE(kv.CheckAllConsumed().ok());
}

TEST(RadioProfileTest, RejectsBadValues) {
  EXPECT_FALSE(
      RadioProfileFromKeyValue(Parse("x.connect_time = -1\n"), "x.", {}).ok());
  EXPECT_FALSE(
      RadioProfileFromKeyValue(Parse("x.connect_time = abc\n"), "x.", {})
          .ok());
  EXPECT_TRUE(Radio3G().Validate().ok());
}

TEST(BatterySpecTest, Validation) {
  EXPECT_TRUE(BatterySpec{}.Validate().ok());
  EXPECT_FALSE((BatterySpec{0.0, 2800}).Validate().ok());
  EXPECT_FALSE((BatterySpec{3.85, -1}).Validate().ok());
}

}  // namespace
}  // namespace ziptrace
