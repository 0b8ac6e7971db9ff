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

#include "ziptrace/trace_io.h"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "ziptrace/status_macros.h"

namespace ziptrace {
namespace {

absl::Status ParseError(int line_no, absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrFormat("line %d: %s", line_no, what));
}

// Calls `row(line_no, fields)` for every data line. Fields are unsigned
// decimal integers; anything else (including fractional seconds) is a parse
// error naming the line.
template <size_t N, typename RowFn>
absl::Status ForEachRow(std::istream& in, absl::string_view header,
                        RowFn row) {
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty()) continue;
    if (first) {
      first = false;
      if (text == header) continue;
    }
    std::vector<absl::string_view> parts = absl::StrSplit(text, ',');
    if (parts.size() != N) {
      return ParseError(line_no, absl::StrFormat("expected %d fields, got %d",
                                                 N, parts.size()));
    }
    std::array<uint64_t, N> fields{};
    for (size_t i = 0; i < N; ++i) {
      absl::string_view f = absl::StripAsciiWhitespace(parts[i]);
      if (f.empty() || !absl::ascii_isdigit(f.front()) ||
          !absl::SimpleAtoi(f, &fields[i])) {
        return ParseError(line_no,
                          absl::StrFormat("field %d ('%s') is not a "
                                          "non-negative integer",
                                          i + 1, f));
      }
    }
    ZT_RETURN_IF_ERROR(row(line_no, fields));
  }
  if (in.bad()) return absl::DataLossError("read failure");
  return absl::OkStatus();
}

absl::Status CheckId32(int line_no, uint64_t v, absl::string_view name) {
  if (v > std::numeric_limits<uint32_t>::max()) {
    return ParseError(line_no, absl::StrFormat("%s %d out of range", name, v));
  }
  return absl::OkStatus();
}

absl::Status CheckTimes(int line_no, uint64_t start, uint64_t end) {
  constexpr uint64_t kMax =
      static_cast<uint64_t>(std::numeric_limits<Seconds>::max());
  if (start > kMax || end > kMax) return ParseError(line_no, "time overflow");
  if (start > end) return ParseError(line_no, "start_s exceeds end_s");
  return absl::OkStatus();
}

void SortEvents(std::vector<TowerEvent>& events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const TowerEvent& a, const TowerEvent& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.end < b.end;
                   });
}

}  // namespace

absl::StatusOr<Dataset> ReadTraces(std::istream& in) {
  std::vector<Trace> traces;
  absl::flat_hash_map<UserId, size_t> index;
  ZT_RETURN_IF_ERROR(ForEachRow<4>(
      in, kTraceHeader,
      [&](int line_no, const std::array<uint64_t, 4>& f) -> absl::Status {
        ZT_RETURN_IF_ERROR(CheckId32(line_no, f[0], "user_id"));
        ZT_RETURN_IF_ERROR(CheckId32(line_no, f[1], "tower_id"));
        ZT_RETURN_IF_ERROR(CheckTimes(line_no, f[2], f[3]));
        UserId user{static_cast<uint32_t>(f[0])};
        auto [it, inserted] = index.try_emplace(user, traces.size());
        if (inserted) traces.push_back({user, {}});
        traces[it->second].events.push_back(
            {TowerId{static_cast<uint32_t>(f[1])}, static_cast<Seconds>(f[2]),
             static_cast<Seconds>(f[3])});
        return absl::OkStatus();
      }));
  return Dataset::Create(std::move(traces));
}

void WriteTraces(const Dataset& dataset, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const Trace& t : dataset.traces()) {
    for (const TowerEvent& e : t.events) {
      out << t.owner.value << ',' << e.tower.value << ',' << e.start << ','
          << e.end << '\n';
    }
  }
}

absl::StatusOr<std::vector<AnonymousTrace>> ReadAnonymousTraces(
    std::istream& in) {
  std::vector<AnonymousTrace> fragments;
  absl::flat_hash_map<PseudonymId, size_t> index;
  ZT_RETURN_IF_ERROR(ForEachRow<4>(
      in, kAnonymousHeader,
      [&](int line_no, const std::array<uint64_t, 4>& f) -> absl::Status {
        ZT_RETURN_IF_ERROR(CheckId32(line_no, f[1], "tower_id"));
        ZT_RETURN_IF_ERROR(CheckTimes(line_no, f[2], f[3]));
        PseudonymId p(f[0]);
        auto [it, inserted] = index.try_emplace(p, fragments.size());
        if (inserted) fragments.push_back({p, {}});
        fragments[it->second].events.push_back(
            {TowerId{static_cast<uint32_t>(f[1])}, static_cast<Seconds>(f[2]),
             static_cast<Seconds>(f[3])});
        return absl::OkStatus();
      }));
  for (AnonymousTrace& frag : fragments) {
    SortEvents(frag.events);
    absl::Status s = ValidateEvents(frag.events);
    if (!s.ok()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "pseudonym %d: %s", frag.pseudonym.raw(), s.message()));
    }
  }
  return fragments;
}

void WriteAnonymousTraces(std::span<const AnonymousTrace> fragments,
                          std::ostream& out) {
  out << kAnonymousHeader << '\n';
  for (const AnonymousTrace& frag : fragments) {
    for (const TowerEvent& e : frag.events) {
      out << frag.pseudonym.raw() << ',' << e.tower.value << ',' << e.start
          << ',' << e.end << '\n';
    }
  }
}

absl::Status TruthSidecar::Add(PseudonymId pseudonym, UserId user) {
  if (!map_.try_emplace(pseudonym, user).second) {
    return absl::AlreadyExistsError(
        absl::StrFormat("pseudonym %d listed twice", pseudonym.raw()));
  }
  order_.emplace_back(pseudonym, user);
  return absl::OkStatus();
}

std::optional<UserId> TruthSidecar::Lookup(PseudonymId pseudonym) const {
  auto it = map_.find(pseudonym);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

TruthSidecar MakeSidecar(std::span<const PseudonymousTrace> fragments) {
  TruthSidecar sidecar;
  for (const PseudonymousTrace& f : fragments) {
    // Pseudonyms are unique by construction.
    sidecar.Add(f.view.pseudonym, f.truth).IgnoreError();
  }
  return sidecar;
}

absl::StatusOr<TruthSidecar> ReadTruthSidecar(std::istream& in) {
  TruthSidecar sidecar;
  ZT_RETURN_IF_ERROR(ForEachRow<2>(
      in, kSidecarHeader,
      [&](int line_no, const std::array<uint64_t, 2>& f) -> absl::Status {
        ZT_RETURN_IF_ERROR(CheckId32(line_no, f[1], "user_id"));
        absl::Status s =
            sidecar.Add(PseudonymId(f[0]), UserId{static_cast<uint32_t>(f[1])});
        if (!s.ok()) return ParseError(line_no, s.message());
        return absl::OkStatus();
      }));
  return sidecar;
}

void WriteTruthSidecar(const TruthSidecar& sidecar, std::ostream& out) {
  out << kSidecarHeader << '\n';
  for (const auto& [p, u] : sidecar.entries()) {
    out << p.raw() << ',' << u.value << '\n';
  }
}

absl::StatusOr<BusyIntervals> ReadBusyIntervals(std::istream& in) {
  BusyIntervals busy;
  ZT_RETURN_IF_ERROR(ForEachRow<3>(
      in, kBusyHeader,
      [&](int line_no, const std::array<uint64_t, 3>& f) -> absl::Status {
        ZT_RETURN_IF_ERROR(CheckId32(line_no, f[0], "user_id"));
        ZT_RETURN_IF_ERROR(CheckTimes(line_no, f[1], f[2]));
        busy[UserId{static_cast<uint32_t>(f[0])}].push_back(
            {static_cast<Seconds>(f[1]), static_cast<Seconds>(f[2])});
        return absl::OkStatus();
      }));
  for (auto& [user, intervals] : busy) {
    std::sort(intervals.begin(), intervals.end(),
              [](const TimeInterval& a, const TimeInterval& b) {
                return a.start < b.start;
              });
    std::vector<TimeInterval> merged;
    for (const TimeInterval& iv : intervals) {
      if (!merged.empty() && iv.start <= merged.back().end) {
        merged.back().end = std::max(merged.back().end, iv.end);
      } else {
        merged.push_back(iv);
      }
    }
    intervals = std::move(merged);
  }
  return busy;
}

}  // namespace ziptrace
