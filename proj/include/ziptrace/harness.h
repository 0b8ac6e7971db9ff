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

// End-to-end experiments: split a month of traces into training and test
// periods, anonymize the test period under a grid of renewal policies, run
// the profiling and linking attack, and aggregate accuracy per user type.

#ifndef ZIPTRACE_HARNESS_H_
#define ZIPTRACE_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ziptrace/battery.h"
#include "ziptrace/defender.h"
#include "ziptrace/key_value.h"
#include "ziptrace/synthgen.h"
#include "ziptrace/trace_model.h"

namespace ziptrace {

struct ExperimentConfig {
  // Empty: generate from `synth`, reseeded with each entry of `seeds`.
  std::string traces_path;
  SynthConfig synth;
  // Absolute split instant; otherwise the first `train_fraction` of the
  // dataset's time span is training.
  std::optional<Seconds> split;
  double train_fraction = 2.0 / 3.0;

  std::vector<double> utilities = {1.0, 0.95, 0.9, 0.8};
  std::vector<Seconds> max_off_times = {30};
  // 0: link with the policy's max_off_time.
  Seconds link_window = 0;
  int max_links = 0;
  int traces_per_user = 10;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  CooldownRule cooldown_rule = CooldownRule::kUtilityRatio;
  bool collapse_repeats = true;

  std::vector<Seconds> trace_lengths = {600, 3600, 86400, 30 * 86400};
  double sweep_utility = 0.95;
  std::vector<Seconds> sweep_max_off_times = {5, 10, 30, 60, 120};

  std::string busy_path;
  // Used when busy_path is empty; 0 disables busy intervals.
  BusyConfig busy = {.arrivals_per_day = 0.0};

  RadioProfile radio_4g = Radio4G();
  RadioProfile radio_3g = Radio3G();
  BatterySpec battery;

  bool run_tradeoff = true;
  bool run_trace_length = true;
  bool run_offline_sweep = true;
  // 0: std::thread::hardware_concurrency().
  int threads = 0;

  absl::Status Validate() const;
};

// Flat key=value configuration; see the README for the key list. Unknown
// keys are rejected.
absl::StatusOr<ExperimentConfig> ExperimentConfigFromKeyValue(
    const KeyValueConfig& kv);

// Label used for rows that aggregate every scored user.
inline constexpr char kAllUsersLabel[] = "all";

struct TradeoffRow {
  uint64_t seed = 0;
  std::string user_type;
  double utility = 1.0;
  Seconds max_off_time = 0;
  int n_users = 0;
  double mean_accuracy = 0.0;
  double ci95_halfwidth = 0.0;
  double mean_realized_utility = 1.0;
  double cycles_per_day = 0.0;
  double battery_fraction_3g = 0.0;
  double battery_fraction_4g = 0.0;
  // Fraction of evaluated chains whose links include at least one step
  // between fragments of the same user.
  double link_success_rate = 0.0;
};

struct TraceLengthRow {
  uint64_t seed = 0;
  std::string user_type;
  Seconds duration = 0;
  int n_users = 0;
  double mean_accuracy = 0.0;
  double ci95_halfwidth = 0.0;
  // Set when the duration reaches past some user's test span, in which case
  // that user is scored on the full span.
  bool full_span = false;
};

struct BatteryRow {
  uint64_t seed = 0;
  double utility = 1.0;
  Seconds max_off_time = 0;
  double cycles_per_day = 0.0;
  double cycle_energy_3g_mwh = 0.0;
  double cycle_energy_4g_mwh = 0.0;
  double battery_fraction_3g = 0.0;
  double battery_fraction_4g = 0.0;
};

struct ExperimentReport {
  std::vector<TradeoffRow> tradeoff;
  std::vector<TraceLengthRow> trace_length;
  std::vector<TradeoffRow> offline_sweep;
  std::vector<BatteryRow> battery;
};

// Each runner covers every seed; rows are ordered by seed, then grid point,
// then user type (the "all" row last).
absl::StatusOr<std::vector<TradeoffRow>> RunTradeoff(
    const ExperimentConfig& cfg);
absl::StatusOr<std::vector<TraceLengthRow>> RunTraceLength(
    const ExperimentConfig& cfg);
absl::StatusOr<std::vector<TradeoffRow>> RunOfflineSweep(
    const ExperimentConfig& cfg);

// Runs the enabled experiments and derives the battery rows from the
// trade-off and sweep "all" rows.
absl::StatusOr<ExperimentReport> RunExperiments(const ExperimentConfig& cfg);

}  // namespace ziptrace

#endif  // ZIPTRACE_HARNESS_H_
