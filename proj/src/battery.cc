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

#include <algorithm>

#include "absl/strings/str_format.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {

absl::Status RadioProfile::Validate() const {
  if (connect_power_mw < 0 || disconnect_power_mw < 0 ||
      connect_time_s < 0 || disconnect_time_s < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("radio profile %s has a negative constant", label));
  }
  return absl::OkStatus();
}

RadioProfile Radio4G() { return {"4G", 2006.0, 1120.0, 2.6, 3.0}; }
RadioProfile Radio3G() { return {"3G", 2098.0, 1282.0, 5.0, 4.0}; }

absl::StatusOr<RadioProfile> RadioProfileFromKeyValue(
    const KeyValueConfig& kv, const std::string& prefix, RadioProfile base) {
  auto read = [&](const char* key, double& field) -> absl::Status {
    ZT_ASSIGN_OR_RETURN(field, kv.GetDouble(prefix + key, field));
    return absl::OkStatus();
  };
  ZT_RETURN_IF_ERROR(read("connect_power", base.connect_power_mw));
  ZT_RETURN_IF_ERROR(read("disconnect_power", base.disconnect_power_mw));
  ZT_RETURN_IF_ERROR(read("connect_time", base.connect_time_s));
  ZT_RETURN_IF_ERROR(read("disconnect_time", base.disconnect_time_s));
  if (auto label = kv.GetString(prefix + "label")) base.label = *label;
  ZT_RETURN_IF_ERROR(base.Validate());
  return base;
}

absl::Status BatterySpec::Validate() const {
  if (!(voltage_v > 0) || !(capacity_mah > 0)) {
    return absl::InvalidArgumentError("battery voltage and capacity must be > 0");
  }
  return absl::OkStatus();
}

double CycleEnergy(const RadioProfile& radio) {
  return (radio.connect_power_mw * radio.connect_time_s +
          radio.disconnect_power_mw * radio.disconnect_time_s) /
         3600.0;
}

double DailyBatteryFraction(double cycles_per_day, const RadioProfile& radio,
                            const BatterySpec& battery) {
  double f = cycles_per_day * CycleEnergy(radio) / battery.capacity_mwh();
  return std::clamp(f, 0.0, 1.0);
}

double OfflineTimePerCycle(const RadioProfile& radio) {
  return radio.connect_time_s;
}

}  // namespace ziptrace
