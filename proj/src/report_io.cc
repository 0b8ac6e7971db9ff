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

#include "ziptrace/report_io.h"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {
namespace {

std::string D(double v) { return absl::StrFormat("%.17g", v); }

// Splits CSV lines after checking the header; calls fn(line_no, fields).
template <typename Fn>
absl::Status ForEachCsvRow(std::istream& in, absl::string_view header,
                           size_t width, Fn fn) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    return absl::InvalidArgumentError(
        absl::StrFormat("expected header '%s'", header));
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = absl::StrSplit(line, ',');
    if (fields.size() != width) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "line %d: expected %d fields, got %d", line_no, width, fields.size()));
    }
    ZT_RETURN_IF_ERROR(fn(line_no, fields));
  }
  return absl::OkStatus();
}

class FieldReader {
 public:
  FieldReader(int line, const std::vector<std::string>& fields)
      : line_(line), fields_(fields) {}

  template <typename T>
  absl::Status Next(T& out) {
    const std::string& f = fields_[i_++];
    bool ok;
    if constexpr (std::is_same_v<T, std::string>) {
      out = f;
      ok = true;
    } else if constexpr (std::is_same_v<T, bool>) {
      int v = 0;
      ok = absl::SimpleAtoi(f, &v) && (v == 0 || v == 1);
      out = v == 1;
    } else if constexpr (std::is_floating_point_v<T>) {
      ok = absl::SimpleAtod(f, &out);
    } else {
      ok = absl::SimpleAtoi(f, &out);
    }
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: bad field '%s'", line_, f));
    }
    return absl::OkStatus();
  }

 private:
  int line_;
  const std::vector<std::string>& fields_;
  size_t i_ = 0;
};

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  if (!out) {
    return absl::InternalError(
        absl::StrFormat("failed writing %s", path.string()));
  }
  return absl::OkStatus();
}

template <typename Row, typename Writer>
std::string Render(std::span<const Row> rows, Writer writer) {
  std::ostringstream s;
  writer(rows, s);
  return s.str();
}

}  // namespace

void WriteTradeoffCsv(std::span<const TradeoffRow> rows, std::ostream& out) {
  out << kTradeoffHeader << "\n";
  for (const TradeoffRow& r : rows) {
    out << absl::StrJoin(
               {absl::StrCat(r.seed), r.user_type, D(r.utility),
                absl::StrCat(r.max_off_time), absl::StrCat(r.n_users),
                D(r.mean_accuracy), D(r.ci95_halfwidth),
                D(r.mean_realized_utility), D(r.cycles_per_day),
                D(r.battery_fraction_3g), D(r.battery_fraction_4g),
                D(r.link_success_rate)},
               ",")
        << "\n";
  }
}

void WriteTraceLengthCsv(std::span<const TraceLengthRow> rows,
                         std::ostream& out) {
  out << kTraceLengthHeader << "\n";
  for (const TraceLengthRow& r : rows) {
    out << absl::StrJoin({absl::StrCat(r.seed), r.user_type,
                          absl::StrCat(r.duration), absl::StrCat(r.n_users),
                          D(r.mean_accuracy), D(r.ci95_halfwidth),
                          absl::StrCat(r.full_span ? 1 : 0)},
                         ",")
        << "\n";
  }
}

void WriteBatteryCsv(std::span<const BatteryRow> rows, std::ostream& out) {
  out << kBatteryHeader << "\n";
  for (const BatteryRow& r : rows) {
    out << absl::StrJoin({absl::StrCat(r.seed), D(r.utility),
                          absl::StrCat(r.max_off_time), D(r.cycles_per_day),
                          D(r.cycle_energy_3g_mwh), D(r.cycle_energy_4g_mwh),
                          D(r.battery_fraction_3g), D(r.battery_fraction_4g)},
                         ",")
        << "\n";
  }
}

void WriteAttributionsCsv(std::span<const Attribution> rows,
                          std::ostream& out) {
  out << kAttributionHeader << "\n";
  for (const Attribution& a : rows) {
    out << a.pseudonym.raw() << "," << a.predicted.value << ","
        << D(a.log_score) << "," << a.linked_chain.size() << "\n";
  }
}

void WriteScoresCsv(std::span<const BehaviorScores> rows, std::ostream& out) {
  out << kScoresHeader << "\n";
  for (const BehaviorScores& s : rows) {
    out << s.user.value << "," << D(s.jaccard) << "," << D(s.mixing) << ","
        << UserTypeLabel(s.type) << "\n";
  }
}

absl::StatusOr<std::vector<TradeoffRow>> ReadTradeoffCsv(std::istream& in) {
  std::vector<TradeoffRow> rows;
  ZT_RETURN_IF_ERROR(ForEachCsvRow(
      in, kTradeoffHeader, 12,
      [&](int line, const std::vector<std::string>& f) -> absl::Status {
        FieldReader r(line, f);
        TradeoffRow row;
        ZT_RETURN_IF_ERROR(r.Next(row.seed));
        ZT_RETURN_IF_ERROR(r.Next(row.user_type));
        ZT_RETURN_IF_ERROR(r.Next(row.utility));
        ZT_RETURN_IF_ERROR(r.Next(row.max_off_time));
        ZT_RETURN_IF_ERROR(r.Next(row.n_users));
        ZT_RETURN_IF_ERROR(r.Next(row.mean_accuracy));
        ZT_RETURN_IF_ERROR(r.Next(row.ci95_halfwidth));
        ZT_RETURN_IF_ERROR(r.Next(row.mean_realized_utility));
        ZT_RETURN_IF_ERROR(r.Next(row.cycles_per_day));
        ZT_RETURN_IF_ERROR(r.Next(row.battery_fraction_3g));
        ZT_RETURN_IF_ERROR(r.Next(row.battery_fraction_4g));
        ZT_RETURN_IF_ERROR(r.Next(row.link_success_rate));
        rows.push_back(std::move(row));
        return absl::OkStatus();
      }));
  return rows;
}

absl::StatusOr<std::vector<TraceLengthRow>> ReadTraceLengthCsv(
    std::istream& in) {
  std::vector<TraceLengthRow> rows;
  ZT_RETURN_IF_ERROR(ForEachCsvRow(
      in, kTraceLengthHeader, 7,
      [&](int line, const std::vector<std::string>& f) -> absl::Status {
        FieldReader r(line, f);
        TraceLengthRow row;
        ZT_RETURN_IF_ERROR(r.Next(row.seed));
        ZT_RETURN_IF_ERROR(r.Next(row.user_type));
        ZT_RETURN_IF_ERROR(r.Next(row.duration));
        ZT_RETURN_IF_ERROR(r.Next(row.n_users));
        ZT_RETURN_IF_ERROR(r.Next(row.mean_accuracy));
        ZT_RETURN_IF_ERROR(r.Next(row.ci95_halfwidth));
        ZT_RETURN_IF_ERROR(r.Next(row.full_span));
        rows.push_back(std::move(row));
        return absl::OkStatus();
      }));
  return rows;
}

absl::StatusOr<std::vector<BatteryRow>> ReadBatteryCsv(std::istream& in) {
  std::vector<BatteryRow> rows;
  ZT_RETURN_IF_ERROR(ForEachCsvRow(
      in, kBatteryHeader, 8,
      [&](int line, const std::vector<std::string>& f) -> absl::Status {
        FieldReader r(line, f);
        BatteryRow row;
        ZT_RETURN_IF_ERROR(r.Next(row.seed));
        ZT_RETURN_IF_ERROR(r.Next(row.utility));
        ZT_RETURN_IF_ERROR(r.Next(row.max_off_time));
        ZT_RETURN_IF_ERROR(r.Next(row.cycles_per_day));
        ZT_RETURN_IF_ERROR(r.Next(row.cycle_energy_3g_mwh));
        ZT_RETURN_IF_ERROR(r.Next(row.cycle_energy_4g_mwh));
        ZT_RETURN_IF_ERROR(r.Next(row.battery_fraction_3g));
        ZT_RETURN_IF_ERROR(r.Next(row.battery_fraction_4g));
        rows.push_back(std::move(row));
        return absl::OkStatus();
      }));
  return rows;
}

std::string ConfigHash(const KeyValueConfig& config) {
  const std::string canonical = config.Canonical();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(),
             nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    absl::StrAppendFormat(&hex, "%02x", digest[i]);
  }
  return hex;
}

void WriteManifest(const KeyValueConfig& config, const ExperimentConfig& cfg,
                   std::ostream& out) {
  out << "config_sha256=" << ConfigHash(config) << "\n";
  out << "seeds=" << absl::StrJoin(cfg.seeds, ",") << "\n";
  out << "source=" << (cfg.traces_path.empty() ? "synthetic" : cfg.traces_path)
      << "\n";
  out << "# canonical config\n" << config.Canonical();
}

absl::Status EmitPlotData(const ExperimentReport& report,
                          const KeyValueConfig& config,
                          const ExperimentConfig& cfg,
                          const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrFormat("cannot create %s: %s", out_dir, ec.message()));
  }
  const fs::path dir(out_dir);
  ZT_RETURN_IF_ERROR(WriteFile(
      dir / "tradeoff.csv",
      Render<TradeoffRow>(report.tradeoff, [](auto rows, std::ostream& o) {
        WriteTradeoffCsv(rows, o);
      })));
  ZT_RETURN_IF_ERROR(WriteFile(
      dir / "trace_length.csv",
      Render<TraceLengthRow>(report.trace_length,
                             [](auto rows, std::ostream& o) {
                               WriteTraceLengthCsv(rows, o);
                             })));
  ZT_RETURN_IF_ERROR(WriteFile(
      dir / "offline_sweep.csv",
      Render<TradeoffRow>(report.offline_sweep, [](auto rows, std::ostream& o) {
        WriteTradeoffCsv(rows, o);
      })));
  ZT_RETURN_IF_ERROR(WriteFile(
      dir / "battery.csv",
      Render<BatteryRow>(report.battery, [](auto rows, std::ostream& o) {
        WriteBatteryCsv(rows, o);
      })));
  std::ostringstream manifest;
  WriteManifest(config, cfg, manifest);
  return WriteFile(dir / "manifest.txt", manifest.str());
}

}  // namespace ziptrace
