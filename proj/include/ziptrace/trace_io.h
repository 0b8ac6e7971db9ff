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

// Canonical CSV formats.
//
//   traces      user_id,tower_id,start_s,end_s
//   anonymized  pseudonym_id,tower_id,start_s,end_s
//   sidecar     pseudonym_id,user_id
//   busy        user_id,start_s,end_s
//
// One record per line, integer fields only, header line optional on input
// and always written on output.

#ifndef ZIPTRACE_TRACE_IO_H_
#define ZIPTRACE_TRACE_IO_H_

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ziptrace/trace_model.h"

namespace ziptrace {

inline constexpr char kTraceHeader[] = "user_id,tower_id,start_s,end_s";
inline constexpr char kAnonymousHeader[] =
    "pseudonym_id,tower_id,start_s,end_s";
inline constexpr char kSidecarHeader[] = "pseudonym_id,user_id";
inline constexpr char kBusyHeader[] = "user_id,start_s,end_s";

absl::StatusOr<Dataset> ReadTraces(std::istream& in);
void WriteTraces(const Dataset& dataset, std::ostream& out);

// Fragments keep the order in which their pseudonyms first appear.
absl::StatusOr<std::vector<AnonymousTrace>> ReadAnonymousTraces(
    std::istream& in);
void WriteAnonymousTraces(std::span<const AnonymousTrace> fragments,
                          std::ostream& out);

// Scoring-only map from pseudonym to ground-truth owner.
class TruthSidecar {
 public:
  absl::Status Add(PseudonymId pseudonym, UserId user);
  std::optional<UserId> Lookup(PseudonymId pseudonym) const;
  size_t size() const { return order_.size(); }
  const std::vector<std::pair<PseudonymId, UserId>>& entries() const {
    return order_;
  }

 private:
  absl::flat_hash_map<PseudonymId, UserId> map_;
  std::vector<std::pair<PseudonymId, UserId>> order_;
};

TruthSidecar MakeSidecar(std::span<const PseudonymousTrace> fragments);
absl::StatusOr<TruthSidecar> ReadTruthSidecar(std::istream& in);
void WriteTruthSidecar(const TruthSidecar& sidecar, std::ostream& out);

using BusyIntervals = absl::flat_hash_map<UserId, std::vector<TimeInterval>>;

// Intervals come back sorted per user; overlapping intervals are merged.
absl::StatusOr<BusyIntervals> ReadBusyIntervals(std::istream& in);

}  // namespace ziptrace

#endif  // ZIPTRACE_TRACE_IO_H_
