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

// Energy cost of renewal cycles. A cycle is one detach plus one reattach;
// its cost is the measured power of each transition times its duration.

#ifndef ZIPTRACE_BATTERY_H_
#define ZIPTRACE_BATTERY_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ziptrace/key_value.h"

namespace ziptrace {

struct RadioProfile {
  std::string label;
  double connect_power_mw = 0.0;
  double disconnect_power_mw = 0.0;
  double connect_time_s = 0.0;
  double disconnect_time_s = 0.0;

  absl::Status Validate() const;
};

// Mean measured association / disassociation costs.
RadioProfile Radio4G();
RadioProfile Radio3G();

// Reads `<prefix>connect_power`, `disconnect_power`, `connect_time`,
// `disconnect_time` and optional `label`; missing keys keep `base`.
absl::StatusOr<RadioProfile> RadioProfileFromKeyValue(
    const KeyValueConfig& kv, const std::string& prefix,
    RadioProfile base);

struct BatterySpec {
  double voltage_v = 3.85;
  double capacity_mah = 2800.0;

  double capacity_mwh() const { return voltage_v * capacity_mah; }
  absl::Status Validate() const;
};

// mWh per renewal cycle.
double CycleEnergy(const RadioProfile& radio);

// Fraction of a full charge spent per day, clamped to [0, 1].
double DailyBatteryFraction(double cycles_per_day, const RadioProfile& radio,
                            const BatterySpec& battery = {});

// Seconds a renewal cycle spends reattaching (the connect time).
double OfflineTimePerCycle(const RadioProfile& radio);

}  // namespace ziptrace

#endif  // ZIPTRACE_BATTERY_H_
