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

// Core value types shared by every stage of the pipeline: towers, users,
// timestamped attachment events, ground-truth traces and the pseudonymous
// fragments a renewing device leaves behind.

#ifndef ZIPTRACE_TRACE_MODEL_H_
#define ZIPTRACE_TRACE_MODEL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ziptrace {

// Integer seconds, epoch-relative.
using Seconds = int64_t;

struct TowerId {
  uint32_t value = 0;

  friend auto operator<=>(const TowerId&, const TowerId&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const TowerId& t) {
    return H::combine(std::move(h), t.value);
  }
};

struct UserId {
  uint32_t value = 0;

  friend auto operator<=>(const UserId&, const UserId&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const UserId& u) {
    return H::combine(std::move(h), u.value);
  }
};

// Opaque single-use identifier. Only equality and hashing are offered so
// attacker code cannot order fragments by issue sequence.
class PseudonymId {
 public:
  PseudonymId() = default;
  explicit PseudonymId(uint64_t raw) : raw_(raw) {}

  // Serialization only.
  uint64_t raw() const { return raw_; }

  friend bool operator==(const PseudonymId&, const PseudonymId&) = default;
  template <typename H>
  friend H AbslHashValue(H h, const PseudonymId& p) {
    return H::combine(std::move(h), p.raw_);
  }

 private:
  uint64_t raw_ = 0;
};

// One attachment of a device to a tower over [start, end).
struct TowerEvent {
  TowerId tower;
  Seconds start = 0;
  Seconds end = 0;

  Seconds duration() const { return end - start; }
  friend bool operator==(const TowerEvent&, const TowerEvent&) = default;
};

// Half-open [start, end).
struct TimeInterval {
  Seconds start = 0;
  Seconds end = 0;

  bool Contains(Seconds t) const { return start <= t && t < end; }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

struct Trace {
  UserId owner;
  std::vector<TowerEvent> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// What the attacker is allowed to see of one fragment.
struct AnonymousTrace {
  PseudonymId pseudonym;
  std::vector<TowerEvent> events;

  friend bool operator==(const AnonymousTrace&, const AnonymousTrace&) =
      default;
};

// A defender-emitted fragment plus its ground-truth owner. The owner is for
// scoring; attacker entry points take `AnonymousTrace` views only.
struct PseudonymousTrace {
  AnonymousTrace view;
  UserId truth;
};

// Checks start <= end, ascending starts and a.end <= b.start for neighbours.
absl::Status ValidateEvents(std::span<const TowerEvent> events);

// Total attached seconds.
Seconds AttachedSeconds(std::span<const TowerEvent> events);

// Tower ids in event order. With `collapse_repeats`, runs of the same tower
// are reduced to a single entry.
std::vector<TowerId> TowerSequence(std::span<const TowerEvent> events,
                                   bool collapse_repeats);

// Immutable set of ground-truth traces, one per user, ordered by user id.
class Dataset {
 public:
  Dataset() = default;

  // Sorts each trace's events, then validates. Duplicate owners are merged
  // before validation, so overlapping rows for one user are rejected.
  static absl::StatusOr<Dataset> Create(std::vector<Trace> traces);

  const std::vector<Trace>& traces() const { return traces_; }
  std::vector<UserId> users() const;
  const Trace* Find(UserId user) const;
  size_t size() const { return traces_.size(); }
  bool empty() const { return traces_.empty(); }

  // [earliest start, latest end], or nullopt when there are no events.
  std::optional<std::pair<Seconds, Seconds>> TimeSpan() const;
  Seconds AttachedSeconds() const;

 private:
  explicit Dataset(std::vector<Trace> traces) : traces_(std::move(traces)) {}

  std::vector<Trace> traces_;
};

struct DatasetSplit {
  Dataset train;
  Dataset test;
};

// Events starting before `boundary` go to train, the rest to test. An event
// straddling the boundary is cut into [start, boundary) and [boundary, end).
// Users left with no events in a half are absent from that half.
DatasetSplit SplitByPeriod(const Dataset& dataset, Seconds boundary);

// Cuts `events` to the window [from, to). Events partially inside are
// truncated; zero-length events are kept when from <= start < to.
std::vector<TowerEvent> ClipEvents(std::span<const TowerEvent> events,
                                   Seconds from, Seconds to);

}  // namespace ziptrace

#endif  // ZIPTRACE_TRACE_MODEL_H_
