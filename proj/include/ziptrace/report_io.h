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

// Plot-ready CSV output for experiment reports and per-command results.
// Doubles are written with 17 significant digits so they re-read exactly.

#ifndef ZIPTRACE_REPORT_IO_H_
#define ZIPTRACE_REPORT_IO_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ziptrace/harness.h"
#include "ziptrace/key_value.h"
#include "ziptrace/linking.h"
#include "ziptrace/metrics.h"

namespace ziptrace {

inline constexpr char kTradeoffHeader[] =
    "seed,user_type,utility,max_off_time,n_users,mean_accuracy,"
    "ci95_halfwidth,mean_realized_utility,cycles_per_day,"
    "battery_fraction_3g,battery_fraction_4g,link_success_rate";
inline constexpr char kTraceLengthHeader[] =
    "seed,user_type,duration_s,n_users,mean_accuracy,ci95_halfwidth,"
    "full_span";
inline constexpr char kBatteryHeader[] =
    "seed,utility,max_off_time,cycles_per_day,cycle_energy_3g_mwh,"
    "cycle_energy_4g_mwh,battery_fraction_3g,battery_fraction_4g";
inline constexpr char kAttributionHeader[] =
    "pseudonym_id,predicted_user,log_score,chain_len";
inline constexpr char kScoresHeader[] = "user_id,jaccard,mixing,type";

void WriteTradeoffCsv(std::span<const TradeoffRow> rows, std::ostream& out);
void WriteTraceLengthCsv(std::span<const TraceLengthRow> rows,
                         std::ostream& out);
void WriteBatteryCsv(std::span<const BatteryRow> rows, std::ostream& out);
void WriteAttributionsCsv(std::span<const Attribution> rows,
                          std::ostream& out);
void WriteScoresCsv(std::span<const BehaviorScores> rows, std::ostream& out);

// Readers expect the header line written above.
absl::StatusOr<std::vector<TradeoffRow>> ReadTradeoffCsv(std::istream& in);
absl::StatusOr<std::vector<TraceLengthRow>> ReadTraceLengthCsv(
    std::istream& in);
absl::StatusOr<std::vector<BatteryRow>> ReadBatteryCsv(std::istream& in);

// Hex SHA-256 of the canonical form of `config`.
std::string ConfigHash(const KeyValueConfig& config);

void WriteManifest(const KeyValueConfig& config, const ExperimentConfig& cfg,
                   std::ostream& out);

// tradeoff.csv, trace_length.csv, offline_sweep.csv, battery.csv and
// manifest.txt under `out_dir`, which is created if needed.
absl::Status EmitPlotData(const ExperimentReport& report,
                          const KeyValueConfig& config,
                          const ExperimentConfig& cfg,
                          const std::string& out_dir);

}  // namespace ziptrace

#endif  // ZIPTRACE_REPORT_IO_H_
